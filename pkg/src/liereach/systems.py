"""Bilinear control systems over an enveloping algebra, and the worked presets."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra import AlgebraValidationError, StructureAlgebra, specialize_central
from .envelope import EnvElement, env_adjoint, env_gen, env_scalar, specialize_element
from .gaussian import GaussianRational, gq
from .presets import UnknownPresetError, algebra
from .rep import RepSpec

__all__ = ["ControlSystem", "SystemValidationError", "build_preset", "preset_info", "specialized_rep"]

_MINUS_I = gq(0, -1)


class SystemValidationError(AlgebraValidationError):
    """A Hamiltonian that is not skew under the algebra involution."""


@dataclass(frozen=True, eq=False)
class ControlSystem:
    """``dpsi/dt = (H0 + sum_j u_j H_j) psi`` with skew-Hermitian ``H``.

    ``target`` names the manifold the verdict is about: ``"orbit"`` (the
    closure of states reachable by switching flows) or ``"sphere"`` (the whole
    unit sphere of the Hilbert space).

    ``central_values`` pairs central generator labels with the scalar they
    act as.  Symbolic analysis then runs in the quotient of the enveloping
    algebra where they are replaced by those scalars.
    """

    name: str
    algebra: StructureAlgebra
    H0: EnvElement
    controls: tuple
    target: str = "orbit"
    description: str = ""
    notes: tuple = field(default=())
    central_values: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "central_values", tuple(
            (lab, GaussianRational.coerce(v)) for lab, v in self.central_values))
        if self.target not in ("orbit", "sphere"):
            raise ValueError("target must be 'orbit' or 'sphere'")
        self.validate()

    @property
    def hamiltonians(self) -> tuple:
        return (self.H0,) + self.controls

    @property
    def m(self) -> int:
        return len(self.controls)

    def validate(self) -> None:
        for k, H in enumerate(self.hamiltonians):
            label = "H0" if k == 0 else f"H{k}"
            if not isinstance(H, EnvElement) or H.alg.key != self.algebra.key:
                raise SystemValidationError(f"{label} is not over {self.algebra.name}",
                                            label, "algebra")
            if env_adjoint(self.algebra, H) != -H:
                raise SystemValidationError(f"{label} is not skew-Hermitian", label, "skewness")


    def specialized(self) -> "ControlSystem":
        """The same system over the quotient fixed by ``central_values``."""
        if not self.central_values:
            return self
        red = specialize_central(self.algebra, dict(self.central_values))
        return ControlSystem(self.name, red, specialize_element(self.H0, red),
                             tuple(specialize_element(H, red) for H in self.controls),
                             self.target, self.description, self.notes)


def specialized_rep(rep: RepSpec, alg: StructureAlgebra) -> RepSpec:
    """``rep`` re-targeted at a specialized algebra (same matrices on the rest)."""
    if rep.algebra.key == alg.key:
        return rep
    return replace(rep, algebra=alg, _cache={})


def _skew(H: EnvElement) -> EnvElement:
    return H.scale(_MINUS_I)


def _gens(name):
    alg = algebra(name)
    return alg, [env_gen(alg, lab) for lab in alg.labels]


def build_preset(name: str, a: Fraction = Fraction(1)):
    """Exact system (skew convention, hbar = 1) plus a recommended representation."""
    a = Fraction(a)
    if name == "pt":
        alg, (Lx, Ly, Lz) = _gens("su11_potential")
        C = Lx * Lx + Ly * Ly - Lz * Lz
        sys_ = ControlSystem(
            "pt", alg, _skew((C + env_scalar(alg, Fraction(1, 4))).scale(a)),
            (_skew(Lx), _skew(Ly)),
            description="H0' = a(C + 1/4), H1' = Lx, H2' = Ly on the potential su(1,1)")
        rep = RepSpec(alg, "su11-discrete-plus", K=40, j=1)
    elif name in ("st", "st1"):
        alg, (Lx, Ly, Lz) = _gens("su11_scattering")
        controls = [_skew(Lx), _skew(Ly)]
        desc = "H0' = a Lz^2, H1' = Lx, H2' = Ly on the scattering su(1,1)"
        if name == "st1":
            controls.append(_skew(Lx * Lx))
            desc += ", H3' = Lx^2"
        sys_ = ControlSystem(name, alg, _skew((Lz * Lz).scale(a)), controls, description=desc,
                             notes=("numerics use the discrete series |j,k>, k = j, j+1, ... "
                                    "with Ly diagonal; the continuous spectrum is not realized",))
        rep = RepSpec(alg, "su11-discrete-plus", K=40, j=1)
    elif name == "bt":
        alg, (Lx, Ly, Lz) = _gens("su2")
        sys_ = ControlSystem(
            "bt", alg, _skew((Lz * Lz).scale(-a)), (_skew(Lx), _skew(Ly)),
            target="sphere",
            description="H0' = -a Lz^2, H1' = Lx, H2' = Ly on su(2)",
            notes=("H0 = -a Lz^2; the opposite sign gives the same verdict",))
        rep = RepSpec(alg, "su2-spin", K=5, j=2)
    elif name == "lloyd":
        alg, (x, p, one) = _gens("h1")
        sq = x * x + p * p
        sys_ = ControlSystem(
            "lloyd", alg, _skew(sq.scale(a)),
            (_skew(x * p + p * x), _skew(p), _skew(x), _skew(sq * sq)),
            description="H0' = p^2 + x^2, controls xp+px, p, x, (x^2+p^2)^2 on h(1)",
            central_values=(("I", 1),),
            notes=("symbolic analysis identifies the central I with the identity, as every "
                   "representation does; with I kept as a free PBW variable each bracket "
                   "carries a factor of I and monomials like x^3 can never be generated",))
        rep = RepSpec(alg, "heisenberg-fock", K=40, j=Fraction(1, 2))
    elif name == "qubit":
        alg, (Lx, Ly, Lz) = _gens("su2")
        sys_ = ControlSystem("qubit", alg, _skew(Lz), (_skew(Lx),), target="sphere",
                             description="spin-1/2: H0 = -i sigma_z/2, H1 = -i sigma_x/2")
        rep = RepSpec(alg, "su2-spin", K=2, j=Fraction(1, 2))
    elif name == "qubit_homog":
        alg, (Lx, Ly, Lz) = _gens("su2")
        sys_ = ControlSystem("qubit_homog", alg, EnvElement(alg), (_skew(Lx), _skew(Ly)),
                             target="sphere",
                             description="spin-1/2 homogeneous: H0 = 0, H1 = -i sigma_x/2, H2 = -i sigma_y/2")
        rep = RepSpec(alg, "su2-spin", K=2, j=Fraction(1, 2))
    elif name == "spin1":
        alg, (Lx, Ly, Lz) = _gens("su2")
        sys_ = ControlSystem("spin1", alg, _skew(Lz * Lz), (_skew(Lx),), target="sphere",
                             description="spin-1: H0' = Lz^2, H1' = Lx")
        rep = RepSpec(alg, "su2-spin", K=3, j=1)
    else:
        raise UnknownPresetError(f"unknown preset {name!r}")
    return sys_, rep


def preset_info() -> list:
    from .presets import PRESET_NAMES
    out = []
    for name in PRESET_NAMES:
        s, r = build_preset(name)
        out.append({"name": name, "algebra": s.algebra.name, "m": s.m,
                    "rep": r.describe(), "target": s.target, "description": s.description})
    return out
