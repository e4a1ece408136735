"""Finite-dimensional weighted L^p spaces: vectors, pairings, operator norms.

Every space here is a finite set of labeled atoms with strictly positive
weights.  Vectors are complex (stored real when the data is exactly real),
exponents are exact rationals or infinity, and the duality pairing is the
bilinear weighted sum  <f, g> = sum_t f(t) g(t) mu(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "AlgebraError",
    "Exponent",
    "FiniteMeasureSpace",
    "InputError",
    "LinearMap",
    "LpVector",
    "NormEstimate",
    "OptimizerBudget",
    "SpecMismatchError",
    "VectorTuple",
    "conjugate_exponent",
    "lattice_sup",
    "lp_norm",
    "norming_functional",
    "operator_norm",
    "pairing",
]


class InputError(ValueError):
    """Malformed input data (CLI exit 2)."""


class SpecMismatchError(ValueError):
    """Norm spec incompatible with the data it is applied to (CLI exit 3)."""


class AlgebraError(ValueError):
    """Algebraic structure violation, e.g. a non-associative table (CLI exit 4)."""


# ---------------------------------------------------------------------------
# exponents


class Exponent:
    """An exponent p in [1, inf], exact.

    Finite values are stored as fractions.Fraction so conjugation
    p -> p/(p-1) round-trips without drift; the string forms "inf",
    "2", "4/3" parse exactly.
    """

    __slots__ = ("_frac",)

    def __init__(self, value):
        if isinstance(value, Exponent):
            self._frac = value._frac
            return
        if isinstance(value, str):
            s = value.strip().lower()
            if s in ("inf", "infinity", "oo"):
                self._frac = None
                return
            try:
                frac = Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"cannot parse exponent {value!r}") from exc
        elif isinstance(value, Fraction):
            frac = value
        elif isinstance(value, int):
            frac = Fraction(value)
        elif isinstance(value, float):
            if math.isinf(value):
                self._frac = None
                return
            if not math.isfinite(value):
                raise InputError("exponent must be finite or inf")
            frac = Fraction(value)
        else:
            raise InputError(f"cannot parse exponent {value!r}")
        if frac < 1:
            raise InputError(f"exponent must satisfy p >= 1, got {frac}")
        self._frac = frac

    @property
    def is_inf(self) -> bool:
        return self._frac is None

    @property
    def fraction(self) -> Fraction:
        if self._frac is None:
            raise InputError("infinite exponent has no fraction form")
        return self._frac

    def conjugate(self) -> "Exponent":
        if self._frac is None:
            return Exponent(1)
        if self._frac == 1:
            return INF
        return Exponent(self._frac / (self._frac - 1))

    def __float__(self) -> float:
        return math.inf if self._frac is None else float(self._frac)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Exponent):
            try:
                other = Exponent(other)
            except Exception:
                return NotImplemented
        return self._frac == other._frac

    def __le__(self, other) -> bool:
        other = Exponent(other)
        if self._frac is None:
            return other._frac is None
        if other._frac is None:
            return True
        return self._frac <= other._frac

    def __lt__(self, other) -> bool:
        other = Exponent(other)
        return self <= other and self != other

    def __hash__(self) -> int:
        return hash(self._frac)

    def __str__(self) -> str:
        return "inf" if self._frac is None else str(self._frac)

    def __repr__(self) -> str:
        return f"Exponent({self})"


INF = Exponent("inf")
ONE = Exponent(1)
TWO = Exponent(2)


def conjugate_exponent(p) -> Exponent:
    """Return p' with 1/p + 1/p' = 1; conjugate(1) = inf and conversely."""
    return Exponent(p).conjugate()


# ---------------------------------------------------------------------------
# spaces and vectors


def _as_real_if_possible(arr: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(arr):
        if np.all(arr.imag == 0):
            return np.ascontiguousarray(arr.real, dtype=np.float64)
        return np.ascontiguousarray(arr, dtype=np.complex128)
    return np.ascontiguousarray(arr, dtype=np.float64)


class FiniteMeasureSpace:
    """A finite set of labeled atoms with strictly positive point masses."""

    __slots__ = ("labels", "weights")

    def __init__(self, labels, weights):
        labels = tuple(str(x) for x in labels)
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or len(labels) != weights.shape[0]:
            raise InputError("labels and weights must have equal length")
        if len(labels) < 1:
            raise InputError("a measure space needs at least one atom")
        if len(set(labels)) != len(labels):
            raise InputError("labels must be distinct")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise InputError("weights must be strictly positive and finite")
        self.labels = labels
        self.weights = weights
        self.weights.setflags(write=False)

    @classmethod
    def unit(cls, n: int) -> "FiniteMeasureSpace":
        """n atoms labeled 0..n-1, all weights 1 (counting measure)."""
        return cls([str(i) for i in range(n)], np.ones(n))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteMeasureSpace)
            and self.labels == other.labels
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self) -> str:
        return f"FiniteMeasureSpace({self.size} atoms)"


class LpVector:
    """An element of L^p over a FiniteMeasureSpace."""

    __slots__ = ("space", "p", "coords")

    def __init__(self, space: FiniteMeasureSpace, p, coords):
        self.space = space
        self.p = Exponent(p)
        coords = _as_real_if_possible(np.asarray(coords))
        if coords.ndim != 1 or coords.shape[0] != space.size:
            raise InputError("coordinate count must match the space size")
        if not np.all(np.isfinite(coords)):
            raise InputError("coordinates must be finite")
        self.coords = coords

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coords)

    @property
    def norm(self) -> float:
        return lp_norm(self)

    def with_coords(self, coords) -> "LpVector":
        return LpVector(self.space, self.p, coords)

    def __add__(self, other: "LpVector") -> "LpVector":
        if self.space != other.space or self.p != other.p:
            raise InputError("vector addition needs matching space and exponent")
        return self.with_coords(self.coords + other.coords)

    def __sub__(self, other: "LpVector") -> "LpVector":
        return self + (-1) * other

    def __mul__(self, scalar) -> "LpVector":
        return self.with_coords(self.coords * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LpVector(p={self.p}, coords={self.coords!r})"


def point_mass(space: FiniteMeasureSpace, p, index: int, value=1.0) -> LpVector:
    """value * delta_index as an LpVector."""
    coords = np.zeros(space.size, dtype=np.complex128)
    coords[index] = value
    return LpVector(space, p, coords)


def _norm_arr(coords: np.ndarray, weights: np.ndarray, p: Exponent) -> float:
    a = np.abs(coords)
    if p.is_inf:
        return float(a.max())
    fp = float(p)
    if fp == 1.0:
        return float(np.dot(a, weights))
    if fp == 2.0:
        return float(math.sqrt(np.dot(a * a, weights)))
    return float(np.dot(a**fp, weights) ** (1.0 / fp))


def lp_norm(v: LpVector) -> float:
    """(sum_t |v(t)|^p mu(t))^{1/p}; max_t |v(t)| when p = inf."""
    return _norm_arr(v.coords, v.space.weights, v.p)


def _norming_coords(coords: np.ndarray, w: np.ndarray, p: Exponent) -> np.ndarray:
    val = _norm_arr(coords, w, p)
    if val == 0:
        return np.zeros_like(coords)
    if p.is_inf:
        t = int(np.argmax(np.abs(coords)))
        lam = np.zeros_like(coords)
        lam[t] = np.conj(_sign(coords[t])) / w[t]
        return lam
    fp = float(p)
    if fp == 1.0:
        return np.conj(_sign(coords))
    return np.conj(_sign(coords)) * (np.abs(coords) / val) ** (fp - 1.0)


def norming_functional(v: LpVector) -> LpVector:
    """A vector of unit dual norm pairing with v to exactly lp_norm(v)."""
    return LpVector(v.space, v.p.conjugate(), _norming_coords(v.coords, v.space.weights, v.p))


def pairing(f: LpVector, lam: LpVector):
    """Bilinear duality pairing sum_t f(t) lam(t) mu(t).

    Requires the two vectors to share the space and carry conjugate
    exponents; satisfies |pairing| <= lp_norm(f) * lp_norm(lam).
    """
    if f.space != lam.space:
        raise InputError("pairing requires a shared measure space")
    if f.p.conjugate() != lam.p:
        raise SpecMismatchError(
            f"pairing requires conjugate exponents, got {f.p} and {lam.p}"
        )
    out = np.dot(f.coords * lam.coords, f.space.weights)
    return complex(out) if np.iscomplexobj(f.coords) or np.iscomplexobj(lam.coords) else float(out)


class VectorTuple:
    """A nonempty tuple of vectors sharing one space and exponent.

    Coordinates are stored as one (n x dim) array for kernel friendliness.
    """

    __slots__ = ("space", "p", "coords")

    def __init__(self, entries):
        entries = list(entries)
        if not entries:
            raise InputError("a vector tuple must be nonempty")
        first = entries[0]
        for v in entries[1:]:
            if v.space != first.space or v.p != first.p:
                raise InputError("tuple entries must share space and exponent")
        self.space = first.space
        self.p = first.p
        self.coords = _as_real_if_possible(np.vstack([v.coords for v in entries]))

    @classmethod
    def from_array(cls, space: FiniteMeasureSpace, p, coords) -> "VectorTuple":
        coords = np.atleast_2d(np.asarray(coords))
        return cls([LpVector(space, p, row) for row in coords])

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def entries(self):
        return [LpVector(self.space, self.p, row) for row in self.coords]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coords)

    def norms(self) -> np.ndarray:
        return np.array([_norm_arr(row, self.space.weights, self.p) for row in self.coords])

    def __getitem__(self, i: int) -> LpVector:
        return LpVector(self.space, self.p, self.coords[i])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"VectorTuple(n={self.n}, p={self.p}, dim={self.space.size})"


def lattice_sup(t: VectorTuple) -> LpVector:
    """Pointwise maximum of moduli: out(s) = max_i |x_i(s)|."""
    return LpVector(t.space, t.p, np.abs(t.coords).max(axis=0))


# ---------------------------------------------------------------------------
# linear maps


class LinearMap:
    """A matrix between two weighted L^p spaces.

    matrix[i, j] is the coefficient of codomain atom i in the image of
    domain atom j, so apply(v) = matrix @ v.coords.
    """

    __slots__ = ("domain_space", "domain_p", "codomain_space", "codomain_p", "matrix")

    def __init__(self, domain_space, domain_p, codomain_space, codomain_p, matrix):
        self.domain_space = domain_space
        self.domain_p = Exponent(domain_p)
        self.codomain_space = codomain_space
        self.codomain_p = Exponent(codomain_p)
        matrix = _as_real_if_possible(np.atleast_2d(np.asarray(matrix)))
        if matrix.shape != (codomain_space.size, domain_space.size):
            raise InputError(
                f"matrix shape {matrix.shape} does not match codomain x domain "
                f"({codomain_space.size} x {domain_space.size})"
            )
        if not np.all(np.isfinite(matrix)):
            raise InputError("matrix entries must be finite")
        self.matrix = matrix

    def apply(self, v: LpVector) -> LpVector:
        if v.space != self.domain_space or v.p != self.domain_p:
            raise InputError("vector does not live in the domain of this map")
        return LpVector(self.codomain_space, self.codomain_p, self.matrix @ v.coords)

    def apply_tuple(self, t: VectorTuple) -> VectorTuple:
        if t.space != self.domain_space or t.p != self.domain_p:
            raise InputError("tuple does not live in the domain of this map")
        return VectorTuple.from_array(
            self.codomain_space, self.codomain_p, t.coords @ self.matrix.T
        )

    def adjoint(self) -> "LinearMap":
        """The dual map between dual spaces, for the bilinear weighted pairing.

        <T f, g>_cod = <f, T' g>_dom  forces  T' = D_w^{-1} M^T D_v.
        """
        w = self.domain_space.weights
        v = self.codomain_space.weights
        mat = (self.matrix.T * v[None, :]) / w[:, None]
        return LinearMap(
            self.codomain_space,
            self.codomain_p.conjugate(),
            self.domain_space,
            self.domain_p.conjugate(),
            mat,
        )

    def columns(self) -> list[LpVector]:
        """Images of the normalized point masses delta_j / mu(j)."""
        w = self.domain_space.weights
        return [
            LpVector(self.codomain_space, self.codomain_p, self.matrix[:, j] / w[j])
            for j in range(self.domain_space.size)
        ]

    def __repr__(self) -> str:
        return (
            f"LinearMap(l^{self.domain_p}_{self.domain_space.size} -> "
            f"l^{self.codomain_p}_{self.codomain_space.size})"
        )


def identity_map(space: FiniteMeasureSpace, p) -> LinearMap:
    return LinearMap(space, p, space, p, np.eye(space.size))


# ---------------------------------------------------------------------------
# optimizer plumbing


@dataclass(frozen=True)
class OptimizerBudget:
    """Restart/iteration budget for every seeded-ascent search.

    All stochastic results are deterministic functions of (inputs, seed).
    """

    restarts: int = 64
    max_iter: int = 500
    step_tol: float = 1e-10
    seed: int = 42

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed & 0x7FFFFFFF, salt & 0x7FFFFFFF])

    def scaled(self, restarts=None, max_iter=None) -> "OptimizerBudget":
        return OptimizerBudget(
            restarts=restarts if restarts is not None else self.restarts,
            max_iter=max_iter if max_iter is not None else self.max_iter,
            step_tol=self.step_tol,
            seed=self.seed,
        )


DEFAULT_BUDGET = OptimizerBudget()


@dataclass
class NormEstimate:
    """A norm value plus the honesty flag: certified exact vs lower bound."""

    value: float
    certified: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"value": self.value, "certified": self.certified}
        if self.witness is not None:
            out["witness"] = _witness_jsonable(self.witness)
        return out


def _witness_jsonable(witness):
    def conv(x):
        if isinstance(x, np.ndarray):
            if np.iscomplexobj(x):
                return {"re": x.real.tolist(), "im": x.imag.tolist()}
            return x.tolist()
        if isinstance(x, (np.floating, np.integer)):
            return x.item()
        if isinstance(x, complex):
            return {"re": x.real, "im": x.imag}
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [conv(v) for v in x]
        return x

    return conv(witness)


# ---------------------------------------------------------------------------
# operator norm


def _sign(z):
    a = np.abs(z)
    out = np.where(a == 0, 0, z / np.where(a == 0, 1, a))
    return out


def _operator_norm_starts(T: LinearMap, budget: OptimizerBudget, salt: int):
    """Deterministic start battery: point masses, ones, seeded gaussians."""
    n = T.domain_space.size
    w = T.domain_space.weights
    p = T.domain_p
    real = not np.iscomplexobj(T.matrix)
    rng = budget.rng(salt)
    rows = [np.ones(n)]
    for j in range(min(n, max(1, budget.restarts // 4))):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append(e)
    while len(rows) < budget.restarts:
        g = rng.standard_normal(n)
        if not real:
            g = g + 1j * rng.standard_normal(n)
        rows.append(g)
    X0 = np.array(rows[: max(budget.restarts, len(rows))], dtype=np.complex128 if not real else np.float64)
    norms = np.array([_norm_arr(row, w, p) for row in X0])
    norms[norms == 0] = 1.0
    return X0 / norms[:, None]


def operator_norm(T: LinearMap, budget: OptimizerBudget | None = None) -> NormEstimate:
    """Operator norm of T between weighted L^p spaces.

    Certified exact closed forms:
      * domain exponent 1: max over normalized point-mass columns;
      * domain and codomain exponent inf, real matrix: max weighted row sum
        (here plain row sum, sup norms ignore weights);
      * both exponents 2: largest singular value after diagonal rescale;
      * diagonal matrix with equal exponents: max atom ratio.
    Anything else: seeded multi-start duality-map ascent, reported as an
    uncertified lower bound whose witness reproduces the value exactly.
    """
    budget = budget or DEFAULT_BUDGET
    M = T.matrix
    w = T.domain_space.weights
    v = T.codomain_space.weights
    m, n = M.shape

    if not M.any():
        return NormEstimate(0.0, True, {"kind": "zero_map"})

    if T.domain_p == ONE:
        col_norms = np.array(
            [_norm_arr(M[:, j], v, T.codomain_p) / w[j] for j in range(n)]
        )
        j = int(np.argmax(col_norms))
        x = np.zeros(n, dtype=M.dtype)
        x[j] = 1.0 / w[j]
        return NormEstimate(
            float(col_norms[j]), True, {"kind": "domain_vector", "coords": x}
        )

    if T.domain_p == INF and T.codomain_p == INF and not np.iscomplexobj(M):
        row_sums = np.abs(M).sum(axis=1)
        i = int(np.argmax(row_sums))
        x = np.sign(M[i, :])
        x[x == 0] = 1.0
        return NormEstimate(
            float(row_sums[i]), True, {"kind": "domain_vector", "coords": x}
        )

    if T.domain_p == TWO and T.codomain_p == TWO:
        scaled = (np.sqrt(v)[:, None] * M) / np.sqrt(w)[None, :]
        u_mats, svals, vh = np.linalg.svd(scaled)
        x = vh[0].conj() / np.sqrt(w)
        nx = _norm_arr(x, w, T.domain_p)
        return NormEstimate(
            float(svals[0]), True, {"kind": "domain_vector", "coords": x / nx}
        )

    if m == n and T.domain_p == T.codomain_p and not np.any(M[~np.eye(n, dtype=bool)]):
        d = np.abs(np.diag(M)).astype(np.float64)
        if T.domain_p.is_inf:
            ratios = d
        else:
            ratios = d * (v / w) ** (1.0 / float(T.domain_p))
        j = int(np.argmax(ratios))
        x = np.zeros(n, dtype=M.dtype)
        x[j] = 1.0
        nx = _norm_arr(x, w, T.domain_p)
        return NormEstimate(
            float(ratios[j]), True, {"kind": "domain_vector", "coords": x / nx}
        )

    from . import _backend

    X0 = _operator_norm_starts(T, budget, salt=0xA11CE)
    _, x = _backend.kernels().power_ascent(
        M,
        w,
        v,
        float(T.domain_p),
        float(T.codomain_p),
        X0,
        budget.max_iter,
        budget.step_tol,
    )
    nx = _norm_arr(x, w, T.domain_p)
    if nx == 0:
        return NormEstimate(0.0, False, {"kind": "domain_vector", "coords": x})
    x = x / nx
    val = _norm_arr(M @ x, v, T.codomain_p)
    return NormEstimate(float(val), False, {"kind": "domain_vector", "coords": x})
