"""Built-in symmetry algebras and the worked control systems.

All Hamiltonians are stored in the skew-Hermitian convention ``H = -i H'``
with hbar = 1 and the free-Hamiltonian constant ``a`` defaulting to 1.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import StructureAlgebra
from .gaussian import gq

__all__ = [
    "potential_su11",
    "scattering_su11",
    "su2",
    "heisenberg",
    "ALGEBRAS",
    "algebra",
    "PRESET_NAMES",
    "preset",
    "UnknownPresetError",
]

I_ = gq(0, 1)


def potential_su11() -> StructureAlgebra:
    """su(1,1) potential algebra: L_z compact, L_x and L_y noncompact."""
    return StructureAlgebra.from_brackets(
        "su11_potential", ("Lx", "Ly", "Lz"),
        {("Lx", "Ly"): {"Lz": I_},
         ("Ly", "Lz"): {"Lx": -I_},
         ("Lz", "Lx"): {"Ly": -I_}},
        description="[Lx,Ly]=iLz, [Ly,Lz]=-iLx, [Lz,Lx]=-iLy; Casimir Lx^2+Ly^2-Lz^2",
    )


def scattering_su11() -> StructureAlgebra:
    """su(1,1) scattering algebra: L_y compact, L_x and L_z noncompact."""
    return StructureAlgebra.from_brackets(
        "su11_scattering", ("Lx", "Ly", "Lz"),
        {("Lx", "Ly"): {"Lz": -I_},
         ("Ly", "Lz"): {"Lx": -I_},
         ("Lz", "Lx"): {"Ly": I_}},
        description="[Lx,Ly]=-iLz, [Ly,Lz]=-iLx, [Lz,Lx]=iLy; Casimir Lx^2-Ly^2+Lz^2",
    )


def su2() -> StructureAlgebra:
    """su(2) with the cyclic relations [Lx,Ly]=iLz (spin ladder convention)."""
    return StructureAlgebra.from_brackets(
        "su2", ("Lx", "Ly", "Lz"),
        {("Lx", "Ly"): {"Lz": I_},
         ("Ly", "Lz"): {"Lx": I_},
         ("Lz", "Lx"): {"Ly": I_}},
        description="[Lx,Ly]=iLz cyclic; Casimir Lx^2+Ly^2+Lz^2",
    )


def heisenberg() -> StructureAlgebra:
    """h(1) = span{x, p, I} with [x, p] = i I and I central."""
    return StructureAlgebra.from_brackets(
        "h1", ("x", "p", "I"),
        {("x", "p"): {"I": I_}},
        central_flags=(False, False, True),
        description="[x,p]=iI, I central (hbar=1)",
    )


ALGEBRAS = {
    "su11_potential": potential_su11,
    "su11_scattering": scattering_su11,
    "su2": su2,
    "h1": heisenberg,
}

_ALG_CACHE: dict = {}


def algebra(name: str) -> StructureAlgebra:
    """Shared instance of a built-in algebra (keeps normal-ordering caches warm)."""
    if name not in ALGEBRAS:
        raise UnknownPresetError(f"unknown algebra {name!r}")
    if name not in _ALG_CACHE:
        _ALG_CACHE[name] = ALGEBRAS[name]()
    return _ALG_CACHE[name]


class UnknownPresetError(KeyError):
    pass


# preset systems are defined lazily in analysis-level helpers to avoid import cycles
PRESET_NAMES = ("pt", "st", "st1", "bt", "lloyd", "qubit", "qubit_homog", "spin1")


def preset(name: str, a=1):
    """``(ControlSystem, RepSpec)`` for a named worked system."""
    from .systems import build_preset
    return build_preset(name, Fraction(a))
