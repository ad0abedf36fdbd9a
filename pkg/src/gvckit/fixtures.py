"""Small reference tables used across tests, demos and docs.

``e2``: two countries, one sector each, with intermediate trade both ways.
``noint``: two countries trading final goods only.
``aut``: a closed one-sector economy.

The same tables ship as bundle directories under ``gvckit/data``.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from gvckit.icio import IcioTable, Sector

NAMES = ("e2", "noint", "aut")


def e2(flags=frozenset()) -> IcioTable:
    return IcioTable(
        countries=("A", "B"),
        sectors=(Sector("S1", flags),),
        year=2015,
        Z=[[20.0, 10.0], [10.0, 30.0]],
        F=[[50.0, 20.0], [15.0, 45.0]],
        va=[70.0, 60.0],
        x=[100.0, 100.0],
        emp=[50.0, 80.0],
    )


def noint() -> IcioTable:
    return IcioTable(
        countries=("A", "B"),
        sectors=(Sector("S1"),),
        year=2015,
        Z=np.zeros((2, 2)),
        F=[[80.0, 20.0], [10.0, 90.0]],
        va=[100.0, 100.0],
        x=[100.0, 100.0],
    )


def aut() -> IcioTable:
    return IcioTable(
        countries=("A",),
        sectors=(Sector("S1"),),
        year=2015,
        Z=[[20.0]],
        F=[[80.0]],
        va=[80.0],
        x=[100.0],
    )


def bundle_path(name: str) -> Path:
    if name.lower() not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return Path(str(resources.files("gvckit") / "data" / name.lower()))


def load(name: str) -> IcioTable:
    """Load a shipped fixture bundle from disk."""
    from gvckit.bundle import load_bundle

    return load_bundle(bundle_path(name), tol=1e-9)
