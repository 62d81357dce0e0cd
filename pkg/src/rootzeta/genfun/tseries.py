"""Truncated multivariate power series with layered coefficients.

A series in variables ``t_1..t_n`` is stored against a downward-closed set of
exponent multi-indices (a :class:`Shape`).  Coefficients carry an extra
"layer" axis: with a fixed scale ``w`` the represented series is

    F(t) = sum_K sum_l c[K, l] * w^(l - |K|) * t^K,

i.e. the variables are ``u = t / w`` and layer ``l`` multiplies ``w^l``.  For
the generating functions ``w = 2 pi i`` and every coefficient becomes a
rational number, so the same code runs exactly (``object`` arrays of
:class:`~fractions.Fraction`) or in ``complex128``.  A plain series has one
layer and ``w = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from ..errors import DomainError

EXACT = object
NUMERIC = np.complex128


@dataclass(frozen=True)
class Shape:
    """Monomials with total degree ``<= D`` and, optionally, ``K <= box`` componentwise."""

    n: int
    D: int
    box: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 0 or self.D < 0:
            raise DomainError("shape needs n >= 0 and D >= 0")
        if self.box is not None and (len(self.box) != self.n or min(self.box, default=0) < 0):
            raise DomainError("box must hold one non-negative bound per variable")

    def contains(self, K: Sequence[int]) -> bool:
        if sum(K) > self.D or min(K, default=0) < 0:
            return False
        return self.box is None or all(a <= b for a, b in zip(K, self.box))

    def extended(self, i: int, j: int) -> "Shape":
        """Shape large enough to divide by ``u_i - c u_j`` back into ``self``."""
        box = None
        if self.box is not None:
            box = list(self.box)
            box[i] = self.box[i] + self.box[j] + 1
            box = tuple(box)
        return Shape(self.n, self.D + 1, box)

    @property
    def size(self) -> int:
        return len(_tables(self).monos)


class _Tables:
    def __init__(self, shape: Shape):
        n, D = shape.n, shape.D
        bounds = shape.box if shape.box is not None else (D,) * n
        monos = [K for K in product(*(range(b + 1) for b in bounds)) if sum(K) <= D]
        monos.sort(key=lambda K: (sum(K), tuple(-x for x in K)))
        self.monos = monos
        self.M = np.array(monos, dtype=np.int64).reshape(len(monos), n)
        self.deg = self.M.sum(axis=1)
        self.base = D + 2
        self.weights = self.base ** np.arange(n, dtype=np.int64)
        self.keys = self.M @ self.weights
        self.order = np.argsort(self.keys)
        self.sorted_keys = self.keys[self.order]
        self.index = {K: i for i, K in enumerate(monos)}
        self._pairs = None

    def lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.sorted_keys, keys)
        pos = np.minimum(pos, len(self.sorted_keys) - 1)
        ok = self.sorted_keys[pos] == keys
        return np.where(ok, self.order[pos], -1)

    def pairs(self, shape: Shape) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self._pairs is None:
            ia, ja, ka = [], [], []
            upper = np.array(shape.box if shape.box is not None else (shape.D,) * shape.n, dtype=np.int64)
            for i in range(len(self.monos)):
                ok = self.deg <= shape.D - self.deg[i]
                ok &= np.all(self.M <= upper - self.M[i], axis=1)
                js = np.nonzero(ok)[0]
                ia.append(np.full(len(js), i, dtype=np.int64))
                ja.append(js)
                ka.append(self.lookup(self.keys[i] + self.keys[js]))
            self._pairs = tuple(np.concatenate(x) if x else np.zeros(0, dtype=np.int64) for x in (ia, ja, ka))
        return self._pairs


@lru_cache(maxsize=64)
def _tables(shape: Shape) -> _Tables:
    return _Tables(shape)


def _zeros(m: int, L: int, dtype) -> np.ndarray:
    if dtype is EXACT:
        out = np.empty((m, L), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((m, L), dtype=np.complex128)


def _as_dtype(x, dtype):
    if dtype is EXACT:
        if isinstance(x, (complex, np.complexfloating, float, np.floating)):
            raise DomainError("exact series accept only rational scalars")
        return Fraction(x)
    return complex(x)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Immutable truncated power series; see the module docstring for the layout."""

    variables: tuple[str, ...]
    shape: Shape
    coeffs: np.ndarray
    scale: complex = 1.0

    def __post_init__(self):
        if len(self.variables) != self.shape.n:
            raise DomainError("one name per variable required")
        if self.coeffs.ndim != 2 or self.coeffs.shape[0] != self.shape.size:
            raise DomainError("coefficient array does not match the shape")
        self.coeffs.setflags(write=False)

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, variables, shape: Shape, dtype=NUMERIC, scale=1.0, layers: int = 1) -> "TruncatedSeries":
        return cls(tuple(variables), shape, _zeros(shape.size, layers, dtype), scale)

    @classmethod
    def monomial(cls, variables, shape: Shape, K, coeff=1, layer: int = 0, dtype=NUMERIC, scale=1.0) -> "TruncatedSeries":
        c = _zeros(shape.size, layer + 1, dtype)
        K = tuple(K)
        if shape.contains(K):
            c[_tables(shape).index[K], layer] = _as_dtype(coeff, dtype)
        return cls(tuple(variables), shape, c, scale)

    @classmethod
    def from_dict(cls, variables, shape: Shape, data: dict, dtype=NUMERIC, scale=1.0) -> "TruncatedSeries":
        """Build from ``{K: coeff}`` (single layer); entries outside the shape are dropped."""
        c = _zeros(shape.size, 1, dtype)
        idx = _tables(shape).index
        for K, v in data.items():
            K = tuple(K)
            if K in idx:
                c[idx[K], 0] = _as_dtype(v, dtype)
        return cls(tuple(variables), shape, c, scale)

    # basic properties -----------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.coeffs.dtype == object

    @property
    def dtype(self):
        return EXACT if self.exact else NUMERIC

    @property
    def layers(self) -> int:
        return self.coeffs.shape[1]

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        return _tables(self.shape).monos

    def _like(self, coeffs: np.ndarray, shape: Shape | None = None) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, shape or self.shape, coeffs, self.scale)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.shape != self.shape or other.variables != self.variables:
            raise DomainError("series live on different variable sets or shapes")
        if other.exact != self.exact:
            raise DomainError("cannot mix exact and numeric series")
        if other.scale != self.scale:
            raise DomainError("series use different scales")

    def _pad(self, L: int) -> np.ndarray:
        if self.layers >= L:
            return self.coeffs
        out = _zeros(self.shape.size, L, self.dtype)
        out[:, : self.layers] = self.coeffs
        return out

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + self._constant(other)
        self._check(other)
        L = max(self.layers, other.layers)
        return self._like(self._pad(L) + other._pad(L))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _constant(self, x) -> "TruncatedSeries":
        return TruncatedSeries.monomial(self.variables, self.shape, (0,) * self.shape.n, x, 0, self.dtype, self.scale)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self._like(self.coeffs * _as_dtype(other, self.dtype))
        self._check(other)
        tab = _tables(self.shape)
        ia, ja, ka = tab.pairs(self.shape)
        m = self.shape.size
        Lmax = self.shape.D + 1
        L = min(self.layers + other.layers - 1, Lmax)
        out = _zeros(m, L, self.dtype)
        for l1 in _nonzero_layers(self.coeffs):
            a = self.coeffs[:, l1]
            for l2 in _nonzero_layers(other.coeffs):
                if l1 + l2 >= L:
                    continue
                b = other.coeffs[:, l2]
                if self.exact:
                    mask = _nz(a)[ia] & _nz(b)[ja]
                    prod_ = a[ia[mask]] * b[ja[mask]]
                    col = out[:, l1 + l2]
                    np.add.at(col, ka[mask], prod_)
                    out[:, l1 + l2] = col
                else:
                    prod_ = a[ia] * b[ja]
                    out[:, l1 + l2] += np.bincount(ka, prod_.real, m) + 1j * np.bincount(ka, prod_.imag, m)
        return self._like(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a series with an invertible layer-0 constant term."""
        c0 = self.coeffs[0, 0]
        if c0 == 0 or any(self.coeffs[0, l] != 0 for l in range(1, self.layers)):
            raise DomainError("inverse needs a nonzero constant term in layer 0 only")
        inv0 = (Fraction(1) / c0) if self.exact else 1.0 / c0
        h = self * inv0 - 1
        out = self._constant(1)
        power = self._constant(1)
        for n in range(1, self.shape.D + 1):
            power = power * h
            out = out + (-1) ** n * power
        return out * inv0

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        try:
            self._check(other)
        except DomainError:
            return False
        L = max(self.layers, other.layers)
        return bool(np.all(self._pad(L) == other._pad(L)))

    __hash__ = None

    # reshaping ------------------------------------------------------------
    def restrict(self, shape: Shape) -> "TruncatedSeries":
        """Coefficients on a smaller downward-closed shape."""
        tab = _tables(self.shape)
        target = _tables(shape)
        src = [tab.index.get(K, -1) for K in target.monos]
        if any(i < 0 for i in src):
            raise DomainError("target shape is not contained in the source shape")
        return self._like(self.coeffs[np.array(src, dtype=np.int64)], shape)

    def permute(self, perm: Sequence[int], names: Sequence[str] | None = None) -> "TruncatedSeries":
        """Series whose variable ``i`` is this series' variable ``perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.shape.n)):
            raise DomainError("not a permutation")
        box = None if self.shape.box is None else tuple(self.shape.box[p] for p in perm)
        shape = Shape(self.shape.n, self.shape.D, box)
        tab = _tables(self.shape)
        target = _tables(shape)
        src = np.array([tab.index[tuple(K[perm.index(i)] for i in range(self.shape.n))] for K in target.monos])
        names = tuple(names) if names is not None else tuple(self.variables[p] for p in perm)
        return TruncatedSeries(names, shape, self.coeffs[src], self.scale)

    def divide_linear(self, i: int, j: int, c, target: Shape) -> "TruncatedSeries":
        """Quotient by ``u_i - c u_j``, assuming exact divisibility.

        ``self`` must live on ``target.extended(i, j)`` (or larger); the
        quotient is read off from ``Q[a] = sum_l c^l N[a + (l+1) e_i - l e_j]``.
        """
        tab = _tables(self.shape)
        out_tab = _tables(target)
        c = _as_dtype(c, self.dtype)
        out = _zeros(target.size, self.layers, self.dtype)
        ei = np.zeros(target.n, dtype=np.int64)
        ei[i] = 1
        ej = np.zeros(target.n, dtype=np.int64)
        ej[j] = 1
        M = out_tab.M
        cl = _as_dtype(1, self.dtype)
        for l in range(target.D + 1):
            sel = np.nonzero(M[:, j] >= l)[0]
            if len(sel) == 0:
                break
            src = tab.lookup((M[sel] + (l + 1) * ei - l * ej) @ tab.weights)
            if np.any(src < 0):
                raise DomainError("source shape too small for the division")
            out[sel] += cl * self.coeffs[src]
            cl = cl * c
        return TruncatedSeries(self.variables, target, out, self.scale)

    # reading --------------------------------------------------------------
    def coefficient(self, K: Sequence[int]):
        """Coefficient of ``t^K`` (numeric), folding the layers with the scale."""
        K = tuple(K)
        idx = _tables(self.shape).index.get(K)
        if idx is None:
            raise DomainError(f"monomial {K} outside the truncation")
        w = complex(self.scale)
        d = sum(K)
        return sum(complex(self.coeffs[idx, l]) * w ** (l - d) for l in range(self.layers))

    def coefficient_layers(self, K: Sequence[int]) -> list:
        """The per-layer coefficients of ``u^K`` (exact when the series is)."""
        idx = _tables(self.shape).index[tuple(K)]
        return list(self.coeffs[idx])

    def evaluate(self, t: Sequence[complex]) -> complex:
        """Value of the truncated series at the point ``t``."""
        if len(t) != self.shape.n:
            raise DomainError("point has the wrong dimension")
        w = complex(self.scale)
        u = np.asarray(t, dtype=np.complex128) / w
        M = _tables(self.shape).M
        mono = np.prod(u[None, :] ** M, axis=1) if self.shape.n else np.ones(1, dtype=np.complex128)
        C = self.coeffs.astype(np.complex128) if self.exact else self.coeffs
        wl = w ** np.arange(self.layers)
        return complex(mono @ (C @ wl))

    def to_numeric(self) -> "TruncatedSeries":
        if not self.exact:
            return self
        return self._like(self.coeffs.astype(np.complex128))


def _nz(a: np.ndarray) -> np.ndarray:
    return np.array([x != 0 for x in a], dtype=bool) if a.dtype == object else a != 0


def _nonzero_layers(c: np.ndarray) -> list[int]:
    return [l for l in range(c.shape[1]) if _nz(c[:, l]).any()]


def variables_series(variables, shape: Shape, dtype=NUMERIC, scale=1.0) -> list[TruncatedSeries]:
    """The coordinate series ``u_i`` (each equal to ``t_i / scale``)."""
    n = shape.n
    return [
        TruncatedSeries.monomial(variables, shape, tuple(int(a == i) for a in range(n)), 1, 0, dtype, scale)
        for i in range(n)
    ]
