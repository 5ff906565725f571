"""Flat-spacetime linear algebra at extended precision.

Conventions: coordinates are ordered (t, x, y, z), the metric signature
is (-, +, +, +), and index placement follows the usual rule that a
Lorentz matrix L acts on contravariant components as v' = L v.  The
plates sit at fixed z, so boosts and rotations that preserve the plate
geometry act only in the (t, x, y) block.

Everything is stored as tuples of mpf, so instances are immutable and
hashable and survive precision changes without silent rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from mpmath import mp, mpf, cosh, sinh, cos, sin, sqrt, fabs

from .precision import to_mpf

DIM = 4

# Diagonal of the metric tensor, ordered (t, x, y, z).
METRIC_DIAG = (mpf(-1), mpf(1), mpf(1), mpf(1))


def metric() -> tuple[tuple[mpf, ...], ...]:
    """Metric tensor g_{mu nu} as a 4x4 tuple matrix."""
    return tuple(
        tuple(METRIC_DIAG[i] if i == j else mpf(0) for j in range(DIM))
        for i in range(DIM)
    )


def _validation_tol() -> mpf:
    # Ten digits of slack below working precision, but never looser
    # than 1e-30: composed transforms accumulate rounding.
    return mpf(10) ** max(-30, 10 - mp.dps)


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector with components (t, x, y, z)."""

    t: mpf
    x: mpf
    y: mpf
    z: mpf

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            object.__setattr__(self, name, to_mpf(getattr(self, name)))

    def components(self) -> tuple[mpf, mpf, mpf, mpf]:
        return (self.t, self.x, self.y, self.z)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(*(a - b for a, b in zip(self.components(), other.components())))

    def scale(self, factor) -> "FourVector":
        c = to_mpf(factor)
        return FourVector(*(c * a for a in self.components()))


def mink_dot(u: FourVector, v: FourVector) -> mpf:
    """Minkowski inner product g_{mu nu} u^mu v^nu = -u^t v^t + u.v."""
    return -u.t * v.t + u.x * v.x + u.y * v.y + u.z * v.z


@dataclass(frozen=True)
class SeparationVector:
    """Spacelike point-splitting vector.

    The regulated two-point functions are expanded around coincidence
    along a spacelike direction; a timelike or lightlike separation has
    no invariant length to expand in, so construction rejects it.
    """

    vector: FourVector

    def __post_init__(self):
        if mink_dot(self.vector, self.vector) <= 0:
            from .errors import LightlikeSeparation

            raise LightlikeSeparation(
                "point-splitting vector must be spacelike: "
                f"squared length {mp.nstr(mink_dot(self.vector, self.vector), 8)}"
            )

    @property
    def length(self) -> mpf:
        """Invariant length s = sqrt(g_{mu nu} eps^mu eps^nu) > 0."""
        return sqrt(mink_dot(self.vector, self.vector))

    @staticmethod
    def spatial(x, y, z) -> "SeparationVector":
        """Separation at equal times."""
        return SeparationVector(FourVector(0, x, y, z))


Matrix = tuple[tuple[mpf, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(to_mpf(e) for e in row) for row in rows)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(DIM)), mpf(0)) for j in range(DIM))
        for i in range(DIM)
    )


def _transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(DIM)) for i in range(DIM))


@dataclass(frozen=True)
class LorentzTransform:
    """Metric-preserving linear map, validated at construction.

    The defect max |(L^T g L - g)_{ij}| must stay below a tolerance tied
    to the working precision; exact inputs (integer entries, or matrices
    built by boost/rotation_xy at current precision) pass with room to
    spare.
    """

    matrix: Matrix

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        g = metric()
        defect = _mat_mul(_transpose(m), _mat_mul(g, m))
        worst = max(
            fabs(defect[i][j] - g[i][j]) for i in range(DIM) for j in range(DIM)
        )
        if worst > _validation_tol():
            raise ValueError(
                f"matrix does not preserve the metric: defect {mp.nstr(worst, 8)}"
            )

    def apply(self, v: FourVector) -> FourVector:
        comps = v.components()
        return FourVector(
            *(
                sum((self.matrix[i][j] * comps[j] for j in range(DIM)), mpf(0))
                for i in range(DIM)
            )
        )

    def compose(self, other: "LorentzTransform") -> "LorentzTransform":
        """self after other: (self.compose(other)).apply(v) = self(other(v))."""
        return LorentzTransform(_mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "LorentzTransform":
        # For metric-preserving L the inverse is g L^T g, which is exact
        # in the stored entries; no linear solve needed.
        g = metric()
        return LorentzTransform(_mat_mul(g, _mat_mul(_transpose(self.matrix), g)))


def boost(rapidity) -> LorentzTransform:
    """Boost along x with the given rapidity; leaves y and z alone."""
    r = to_mpf(rapidity)
    ch, sh = cosh(r), sinh(r)
    return LorentzTransform(
        (
            (ch, sh, mpf(0), mpf(0)),
            (sh, ch, mpf(0), mpf(0)),
            (mpf(0), mpf(0), mpf(1), mpf(0)),
            (mpf(0), mpf(0), mpf(0), mpf(1)),
        )
    )


def rotation_xy(angle) -> LorentzTransform:
    """Rotation in the x-y plane; leaves t and z alone."""
    a = to_mpf(angle)
    c, s = cos(a), sin(a)
    return LorentzTransform(
        (
            (mpf(1), mpf(0), mpf(0), mpf(0)),
            (mpf(0), c, -s, mpf(0)),
            (mpf(0), s, c, mpf(0)),
            (mpf(0), mpf(0), mpf(0), mpf(1)),
        )
    )


@dataclass(frozen=True)
class SymTensor4:
    """Symmetric rank-2 tensor with upper indices, stored as a full matrix."""

    matrix: Matrix

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        worst = max(
            fabs(m[i][j] - m[j][i]) for i in range(DIM) for j in range(i + 1, DIM)
        )
        if worst > _validation_tol():
            raise ValueError(f"tensor is not symmetric: defect {mp.nstr(worst, 8)}")

    def __getitem__(self, idx: tuple[int, int]) -> mpf:
        i, j = idx
        return self.matrix[i][j]

    def __add__(self, other: "SymTensor4") -> "SymTensor4":
        return SymTensor4(
            tuple(
                tuple(self.matrix[i][j] + other.matrix[i][j] for j in range(DIM))
                for i in range(DIM)
            )
        )

    def __sub__(self, other: "SymTensor4") -> "SymTensor4":
        return SymTensor4(
            tuple(
                tuple(self.matrix[i][j] - other.matrix[i][j] for j in range(DIM))
                for i in range(DIM)
            )
        )

    def scale(self, factor) -> "SymTensor4":
        c = to_mpf(factor)
        return SymTensor4(
            tuple(tuple(c * self.matrix[i][j] for j in range(DIM)) for i in range(DIM))
        )

    def trace(self) -> mpf:
        """Metric trace g_{mu nu} T^{mu nu}."""
        return sum(
            (METRIC_DIAG[i] * self.matrix[i][i] for i in range(DIM)), mpf(0)
        )

    @staticmethod
    def diagonal(tt, xx, yy, zz) -> "SymTensor4":
        vals = (to_mpf(tt), to_mpf(xx), to_mpf(yy), to_mpf(zz))
        return SymTensor4(
            tuple(
                tuple(vals[i] if i == j else mpf(0) for j in range(DIM))
                for i in range(DIM)
            )
        )

    @staticmethod
    def zero() -> "SymTensor4":
        return SymTensor4.diagonal(0, 0, 0, 0)


def outer(u: FourVector, v: FourVector) -> SymTensor4:
    """Symmetrized outer product (u^mu v^nu + v^mu u^nu) / 2."""
    uc, vc = u.components(), v.components()
    return SymTensor4(
        tuple(
            tuple((uc[i] * vc[j] + vc[i] * uc[j]) / 2 for j in range(DIM))
            for i in range(DIM)
        )
    )


def transform_tensor(transform: LorentzTransform, tensor: SymTensor4) -> SymTensor4:
    """Push a contravariant tensor forward: T'^{mu nu} = L^mu_a L^nu_b T^{ab}."""
    lam = transform.matrix
    t = tensor.matrix
    # Fill the upper triangle and mirror it, so the result is symmetric
    # to the last bit even when rounding differs between (i,j) orders.
    out = [[mpf(0)] * DIM for _ in range(DIM)]
    for i in range(DIM):
        for j in range(i, DIM):
            acc = mpf(0)
            for a in range(DIM):
                la = lam[i][a]
                if la == 0:
                    continue
                for b in range(DIM):
                    if lam[j][b] == 0:
                        continue
                    acc += la * lam[j][b] * t[a][b]
            out[i][j] = acc
            out[j][i] = acc
    return SymTensor4(tuple(tuple(row) for row in out))


def tensor_dot(s: SymTensor4, t: SymTensor4) -> mpf:
    """Double metric contraction g_{ma} g_{nb} S^{mn} T^{ab}."""
    total = mpf(0)
    for i in range(DIM):
        for j in range(DIM):
            total += METRIC_DIAG[i] * METRIC_DIAG[j] * s.matrix[i][j] * t.matrix[i][j]
    return total
