"""Envelopes and envelope gaps of bilinear functions over the unit cube.

For b(x) = sum a_ij x_i x_j on [0,1]^n this module computes

* the McCormick bounding functions mcu/mcl (termwise closed form),
* the concave/convex envelopes cav/vex of b (exact LP over the 2^n cube
  vertices, or cut-based closed forms at points with coordinates in
  {0, 1/2, 1}),
* the gaps mcgap = mcu - mcl and chgap = cav - vex plus their ratio,
* dual certificates proving the envelope values at half points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .cuts import cut_range_bruteforce
from .errors import CapacityError, CertificateError, InputError, InvariantViolationError
from .graph import (
    SignedWeightedGraph,
    VertexSubset,
    cut_weight,
    gamma_abs_weight,
    gamma_weight,
)
from .simplex import bit_matrix, solve_min

LP_SIZE_CAP = 16
_ZERO = 1e-12  # gap values at or below this are treated as exactly zero


@dataclass(frozen=True)
class EvaluationPoint:
    """Point of [0,1]^n with its coordinate partition into zeros, ones, fractionals."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        for idx, c in enumerate(coords, start=1):
            if not (0.0 <= c <= 1.0):
                raise InputError(f"coordinate {idx} = {c!r} is outside [0, 1]")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: float) -> "EvaluationPoint":
        return cls(tuple(coords))

    @classmethod
    def from_iterable(cls, coords: Iterable[float]) -> "EvaluationPoint":
        return cls(tuple(coords))

    @classmethod
    def all_half(cls, n: int) -> "EvaluationPoint":
        return cls((0.5,) * n)

    @property
    def n(self) -> int:
        return len(self.coords)

    @cached_property
    def zero_support(self) -> VertexSubset:
        return VertexSubset.from_members(
            i for i, c in enumerate(self.coords, start=1) if c == 0.0
        )

    @cached_property
    def one_support(self) -> VertexSubset:
        return VertexSubset.from_members(
            i for i, c in enumerate(self.coords, start=1) if c == 1.0
        )

    @cached_property
    def fractional_support(self) -> VertexSubset:
        return VertexSubset.from_members(
            i for i, c in enumerate(self.coords, start=1) if 0.0 < c < 1.0
        )

    @cached_property
    def is_half_point(self) -> bool:
        """True when every coordinate is exactly 0, 1/2, or 1 (no tolerance)."""
        return all(c in (0.0, 0.5, 1.0) for c in self.coords)


def _check_point(g: SignedWeightedGraph, x: EvaluationPoint) -> None:
    if x.n != g.n:
        raise InputError(f"point has {x.n} coordinates but the graph has {g.n} vertices")


def evaluate_bilinear(g: SignedWeightedGraph, x: EvaluationPoint) -> float:
    """b(x) = sum over edges of a_ij x_i x_j."""
    _check_point(g, x)
    c = x.coords
    return float(sum(w * c[i - 1] * c[j - 1] for i, j, w in g.edges))


def mccormick_envelopes(g: SignedWeightedGraph, x: EvaluationPoint) -> tuple[float, float]:
    """(mcu, mcl): the McCormick upper/lower bounding functions at x.

    The relaxation optimum separates per edge: each product term ranges over
    [max(0, x_i + x_j - 1), min(x_i, x_j)] independently, so the extremes pick
    the favorable interval end per edge according to the weight sign.
    """
    _check_point(g, x)
    c = x.coords
    mcu = 0.0
    mcl = 0.0
    for i, j, w in g.edges:
        xi, xj = c[i - 1], c[j - 1]
        hi = xi if xi < xj else xj
        lo = xi + xj - 1.0
        if lo < 0.0:
            lo = 0.0
        if w > 0:
            mcu += w * hi
            mcl += w * lo
        else:
            mcu += w * lo
            mcl += w * hi
    return float(mcu), float(mcl)


def mcgap_halfpoint(g: SignedWeightedGraph, x: EvaluationPoint) -> float:
    """McCormick gap at a half point: half the absolute weight inside the fractional support."""
    _check_point(g, x)
    if not x.is_half_point:
        raise InputError(
            "mcgap_halfpoint needs coordinates in {0, 1/2, 1}; "
            "use mccormick_envelopes for general points"
        )
    return 0.5 * gamma_abs_weight(g, x.fractional_support)


def _staircase_basis(xs: np.ndarray) -> np.ndarray:
    """Feasible starting basis: cube vertices along the coordinate-descending path.

    Writes x as a convex combination of the chain of vertices obtained by
    switching coordinates on one at a time in decreasing coordinate order,
    which is a (possibly degenerate) basic feasible solution.
    """
    order = sorted(range(len(xs)), key=lambda p: (-xs[p], p))
    basis = [0]
    m = 0
    for p in order:
        m |= 1 << p
        basis.append(m)
    return np.array(basis, dtype=np.int64)


def hull_envelopes_lp(
    g: SignedWeightedGraph, x: EvaluationPoint, size_cap: int = LP_SIZE_CAP
) -> tuple[float, float]:
    """(cav, vex): exact envelope values at x via LP over all 2^n cube vertices.

    Coordinates that are exactly 0 or 1 force every vertex of positive weight
    to agree there (their marginal constraints pin the combination), so the LP
    is solved over the remaining fractional subcube with a dense primal
    simplex under Bland's rule.  Capped at n <= size_cap.
    """
    _check_point(g, x)
    if g.n > size_cap:
        raise CapacityError(f"hull LP needs n <= {size_cap}, got {g.n}")
    ones = x.one_support
    frac = sorted(x.fractional_support.members)
    base = gamma_weight(g, ones)
    f = len(frac)
    if f == 0:
        return base, base
    xs = np.array([x.coords[v - 1] for v in frac])
    w_ff = g.weight_matrix[np.ix_(frac, frac)]
    bits = bit_matrix(f)
    gam_f = 0.5 * np.einsum("mk,mk->m", bits @ w_ff, bits)
    to_one = g.weight_matrix[np.ix_(frac, sorted(ones.members))].sum(axis=1)
    c = base + bits @ to_one + gam_f
    if f == 1:
        val = float((1.0 - xs[0]) * c[0] + xs[0] * c[1])
        return val, val
    if f == 2:
        # One-dimensional feasible segment; evaluate both endpoints.
        x1, x2 = float(xs[0]), float(xs[1])
        lam = np.array([(1 - x1) * (1 - x2), x1 * (1 - x2), (1 - x1) * x2, x1 * x2])
        slope = float(c[0] - c[1] - c[2] + c[3])
        t_lo = -min(lam[0], lam[3])
        t_hi = min(lam[1], lam[2])
        v0 = float(lam @ c)
        vals = (v0 + t_lo * slope, v0 + t_hi * slope)
        return max(vals), min(vals)
    a_mat = np.vstack([bits.T, np.ones(1 << f)])
    b_vec = np.append(xs, 1.0)
    basis = _staircase_basis(xs)
    vex, _ = solve_min(a_mat, b_vec, c, basis)
    neg_cav, _ = solve_min(a_mat, b_vec, -c, basis)
    cav = -neg_cav
    return cav, vex


def envelopes_halfpoint(
    g: SignedWeightedGraph, x: EvaluationPoint, mu_plus: float, mu_minus: float
) -> tuple[float, float, float]:
    """(cav, vex, chgap) at a half point from the extreme cut values of the fractional support.

    mu_plus/mu_minus must be the exact maximum/minimum signed cut weight of
    the subgraph induced by the fractional support (see cut_range_bruteforce).
    """
    _check_point(g, x)
    if not x.is_half_point:
        raise InputError("envelopes_halfpoint needs coordinates in {0, 1/2, 1}")
    t_one = x.one_support
    t_frac = x.fractional_support
    base = (
        gamma_weight(g, t_one)
        + 0.5 * cut_weight(g, t_one.union(t_frac), t_one)
        + 0.5 * gamma_weight(g, t_frac)
    )
    vex = base - 0.5 * mu_plus
    cav = base - 0.5 * mu_minus
    return cav, vex, 0.5 * (mu_plus - mu_minus)


@dataclass(frozen=True)
class DualCertificate:
    """Feasible dual solution certifying an envelope value at a half point.

    For side "lower_envelope" the certificate satisfies y + sum_{i in X} z_i
    <= gamma(X) for every X inside the fractional support; for side
    "upper_envelope" the inequality is reversed.  Its objective y + half the
    sum of z equals the certified envelope value minus the binary-part offset.
    """

    side: str  # "lower_envelope" (vex) or "upper_envelope" (cav)
    y: float
    z: dict[int, float]

    @property
    def objective(self) -> float:
        return self.y + 0.5 * sum(self.z.values())


_CERT_CAP = 20  # feasibility validation enumerates 2^|T_f| subsets


def dual_certificate(
    g: SignedWeightedGraph, t_frac: VertexSubset, mu: float, side: str
) -> DualCertificate:
    """Build and validate the dual certificate for one envelope side at a half point.

    mu must be the exact maximum (side "lower_envelope", certifying vex) or
    minimum (side "upper_envelope", certifying cav) signed cut weight of the
    subgraph induced by t_frac.  The returned certificate is y = -mu/2 and
    z_i = half the weight from i into t_frac; feasibility is checked against
    every subset of t_frac and a CertificateError carrying a violating subset
    is raised if mu was wrong in the infeasible direction.
    """
    if side not in ("lower_envelope", "upper_envelope"):
        raise InputError(f"side must be 'lower_envelope' or 'upper_envelope', got {side!r}")
    verts = sorted(t_frac.members)
    k = len(verts)
    if k > _CERT_CAP:
        raise CapacityError(f"certificate validation needs |support| <= {_CERT_CAP}, got {k}")
    if verts and verts[-1] > g.n:
        raise InputError(f"subset {verts} is not contained in the vertex set 1..{g.n}")
    w = g.weight_matrix
    z = {v: 0.5 * float(sum(w[v, u] for u in verts if u != v)) for v in verts}
    y = -0.5 * mu
    # Subset tables by iterative doubling: gamma weight and z sum per mask
    # (mask bit p <-> verts[p]).
    gam = np.zeros(1)
    zsum = np.zeros(1)
    for p, v in enumerate(verts):
        # row[m] = weight from v into mask m over verts[:p]
        row = np.zeros(1)
        for u in verts[:p]:
            row = np.concatenate([row, row + w[v, u]])
        gam = np.concatenate([gam, gam + row])
        zsum = np.concatenate([zsum, zsum + z[v]])
    lhs = y + zsum
    if side == "lower_envelope":
        bad = np.flatnonzero(lhs > gam + 1e-9)
    else:
        bad = np.flatnonzero(lhs < gam - 1e-9)
    if bad.size:
        m = int(bad[0])
        violating = VertexSubset.from_members(verts[p] for p in range(k) if m >> p & 1)
        raise CertificateError(
            f"dual certificate for side {side!r} infeasible on subset "
            f"{sorted(violating.members)}; mu={mu} is not the exact extreme cut value",
            violating_subset=violating,
        )
    return DualCertificate(side=side, y=y, z=z)


@dataclass(frozen=True)
class GapReport:
    """Envelope values, gaps, and gap ratio at one evaluation point."""

    point: EvaluationPoint
    mcu: float
    mcl: float
    cav: float
    vex: float
    mcgap: float
    chgap: float
    ratio: float  # math.inf when chgap = 0 < mcgap
    degenerate: bool  # True when both gaps are zero (ratio reported as 1)
    method: str  # "closed_form" at half points, "lp" otherwise

    def to_json_dict(self) -> dict:
        return {
            "point": list(self.point.coords),
            "mcu": self.mcu,
            "mcl": self.mcl,
            "cav": self.cav,
            "vex": self.vex,
            "mcgap": self.mcgap,
            "chgap": self.chgap,
            "ratio": None if math.isinf(self.ratio) else self.ratio,
            "ratio_infinite": math.isinf(self.ratio),
            "degenerate": self.degenerate,
            "method": self.method,
        }


def gap_report(g: SignedWeightedGraph, x: EvaluationPoint) -> GapReport:
    """Full envelope/gap report at x.

    Half points use the cut-based closed forms (exact enumeration of the
    fractional support, capped at 26 vertices); other points solve the hull LP
    (capped at n <= 16).  The ratio is mcgap/chgap, reported as 1 with the
    degenerate flag when both gaps vanish and as infinity if only chgap does.
    """
    _check_point(g, x)
    mcu, mcl = mccormick_envelopes(g, x)
    mcgap = max(mcu - mcl, 0.0)
    if x.is_half_point:
        mu_plus, mu_minus = cut_range_bruteforce(g, x.fractional_support)
        cav, vex, chgap = envelopes_halfpoint(g, x, mu_plus, mu_minus)
        method = "closed_form"
    else:
        cav, vex = hull_envelopes_lp(g, x)
        chgap = max(cav - vex, 0.0)
        method = "lp"
    if chgap < -_ZERO or mcgap < -_ZERO:
        raise InvariantViolationError(f"negative gap computed: mcgap={mcgap}, chgap={chgap}")
    degenerate = False
    if chgap > _ZERO:
        ratio = mcgap / chgap
    elif mcgap <= _ZERO:
        ratio = 1.0
        degenerate = True
    else:
        ratio = math.inf
    return GapReport(
        point=x,
        mcu=mcu,
        mcl=mcl,
        cav=cav,
        vex=vex,
        mcgap=mcgap,
        chgap=chgap,
        ratio=ratio,
        degenerate=degenerate,
        method=method,
    )
