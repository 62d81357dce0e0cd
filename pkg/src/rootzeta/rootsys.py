"""Root-system data for the classical types A, B, C and D.

Every quantity here is exact: coroots are integer vectors in an orthonormal
basis ``e_1, ..., e_n`` (``n = r + 1`` for type A and ``n = r`` otherwise),
fundamental weights are vectors of :class:`~fractions.Fraction`, and the
linear forms

    L_alpha(m) = <alpha^vee, m_1 lambda_1 + ... + m_r lambda_r>

are integer coefficient vectors ``c(alpha)``.

Canonical root order
--------------------
The positive roots (and hence the exponents ``s_alpha``) are stored in a fixed
per-type order, which is part of the public contract.

======  ==============================================================
type    order of the linear forms
======  ==============================================================
A_r     by height, ties broken lexicographically descending
        (A_2: m1, m2, m1+m2; A_3: m1, m2, m3, m1+m2, m2+m3, m1+m2+m3)
B_2     m1, m2, m1+m2, 2m1+m2
B_3     m1, m2, m3, m1+m2, m2+m3, 2m2+m3, m1+m2+m3, m1+2m2+m3,
        2m1+2m2+m3
C_2     m1, m2, m1+m2, m1+2m2
others  by height, ties broken lexicographically descending
======  ==============================================================

Realizations
------------
* A_r: coroots ``e_i - e_j`` (i < j) in R^{r+1}, traceless weights.
* B_r: coroots ``e_i +- e_j`` and ``2 e_j``; simple coroots
  ``e_1 - e_2, ..., e_{r-1} - e_r, 2 e_r``; ``lambda_i = e_1 + ... + e_i`` for
  ``i < r`` and ``lambda_r = (e_1 + ... + e_r) / 2``.
* C_r: coroots ``e_i +- e_j`` and ``e_j``; simple coroot ``e_r`` last;
  ``lambda_i = e_1 + ... + e_i``.
* D_r: coroots ``e_i +- e_j``; simple coroots end with ``e_{r-1} + e_r``;
  ``lambda_{r-1}`` and ``lambda_r`` are the two half-spin weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, NotInDeltaStarError, UnsupportedRankError

__all__ = [
    "KINDS",
    "RootSystem",
    "SubsetSpec",
    "WeightVector",
    "build_root_system",
    "beta_weights",
    "pstar_pairing",
    "star_roots",
    "sub_roots",
    "star_labels",
    "form_label",
]

KINDS = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

# Canonical order for B_3 (the generic height rule would swap 2m2+m3 and m1+m2+m3).
_FIXED_ORDER: dict[tuple[str, int], tuple[tuple[int, ...], ...]] = {
    ("B", 3): (
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1),
        (0, 2, 1), (1, 1, 1), (1, 2, 1), (2, 2, 1),
    ),
}


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system data; see the module docstring for conventions."""

    kind: str
    rank: int
    dim: int
    positive_coroots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[int, ...]
    fundamental_weights: tuple[tuple[Fraction, ...], ...]
    linear_forms: tuple[tuple[int, ...], ...]

    @property
    def n_roots(self) -> int:
        return len(self.positive_coroots)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    def root_index(self, coroot: Sequence[int]) -> int:
        """Index of a positive coroot given by its e-basis vector."""
        key = tuple(int(x) for x in coroot)
        try:
            return self.positive_coroots.index(key)
        except ValueError:
            raise DomainError(f"{key} is not a positive coroot of {self.name}") from None

    def form_index(self, form: Sequence[int]) -> int:
        """Index of the root whose linear form equals ``form``."""
        key = tuple(int(x) for x in form)
        try:
            return self.linear_forms.index(key)
        except ValueError:
            raise DomainError(f"{key} is not a linear form of {self.name}") from None

    def pairing_matrix(self) -> list[list[Fraction]]:
        """Matrix of <alpha_i^vee, lambda_j> over simple coroots and weights."""
        return [
            [_dot(self.positive_coroots[a], lam) for lam in self.fundamental_weights]
            for a in self.simple_coroots
        ]


@dataclass(frozen=True)
class SubsetSpec:
    """A subset ``I`` of the simple indices with a single excluded index ``k``.

    Indices are 1-based.
    """

    rank: int
    k: int
    I: frozenset = field(init=False)

    def __post_init__(self):
        if not 1 <= self.k <= self.rank:
            raise DomainError(f"excluded index {self.k} outside 1..{self.rank}")
        object.__setattr__(self, "I", frozenset(i for i in range(1, self.rank + 1) if i != self.k))

    @classmethod
    def from_I(cls, rank: int, I: Iterable[int]) -> "SubsetSpec":
        I = set(int(i) for i in I)
        rest = set(range(1, rank + 1)) - I
        if not I <= set(range(1, rank + 1)) or len(rest) != 1:
            raise DomainError(f"I={sorted(I)} must leave exactly one index of 1..{rank}")
        return cls(rank, rest.pop())

    @property
    def sorted_I(self) -> tuple[int, ...]:
        return tuple(sorted(self.I))


@dataclass(frozen=True)
class WeightVector:
    """Positive integers ``m_i`` for ``i`` in ``I`` (the weight sum m_i lambda_i)."""

    m: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, v in self.m:
            if int(v) != v or v < 1:
                raise DomainError(f"m_{i} = {v} must be a positive integer")

    @classmethod
    def from_mapping(cls, m: Mapping[int, int]) -> "WeightVector":
        return cls(tuple(sorted((int(i), int(v)) for i, v in m.items())))

    @classmethod
    def on(cls, spec: SubsetSpec, values: Sequence[int]) -> "WeightVector":
        """Attach ``values`` to ``spec.I`` in increasing index order."""
        idx = spec.sorted_I
        if len(values) != len(idx):
            raise DomainError(f"expected {len(idx)} weight entries, got {len(values)}")
        return cls(tuple(zip(idx, (int(v) for v in values))))

    def as_dict(self) -> dict[int, int]:
        return dict(self.m)

    def __getitem__(self, i: int) -> int:
        return self.as_dict()[i]


def _dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def _realize(kind: str, r: int):
    """Return (dim, positive coroots, simple coroots, fundamental weights)."""
    if kind == "A":
        n = r + 1
        pos = []
        for i in range(n):
            for j in range(i + 1, n):
                v = [0] * n
                v[i], v[j] = 1, -1
                pos.append(tuple(v))
        simple = [tuple(_unit(n, i, 1)[k] - _unit(n, i + 1, 1)[k] for k in range(n)) for i in range(r)]
        weights = []
        for i in range(1, r + 1):
            # e_1 + ... + e_i minus its mean, so that the weight is traceless
            shift = Fraction(i, n)
            weights.append(tuple((Fraction(1) if k < i else Fraction(0)) - shift for k in range(n)))
        return n, pos, simple, weights
    n = r
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            minus = [0] * n
            minus[i], minus[j] = 1, -1
            plus = [0] * n
            plus[i], plus[j] = 1, 1
            pos += [tuple(minus), tuple(plus)]
    if kind == "B":
        pos += [tuple(_unit(n, i, 2)) for i in range(n)]
    elif kind == "C":
        pos += [tuple(_unit(n, i, 1)) for i in range(n)]
    simple = []
    for i in range(r - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    if kind == "B":
        simple.append(tuple(_unit(n, r - 1, 2)))
    elif kind == "C":
        simple.append(tuple(_unit(n, r - 1, 1)))
    else:
        v = [0] * n
        v[r - 2], v[r - 1] = 1, 1
        simple.append(tuple(v))
    ones = lambda i: [Fraction(1) if k < i else Fraction(0) for k in range(n)]  # noqa: E731
    weights = [tuple(ones(i)) for i in range(1, r + 1)]
    half = Fraction(1, 2)
    if kind == "B":
        weights[r - 1] = tuple(half for _ in range(n))
    elif kind == "D":
        weights[r - 2] = tuple([half] * (n - 1) + [-half])
        weights[r - 1] = tuple([half] * n)
    return n, pos, simple, weights


def build_root_system(kind: str, rank: int) -> RootSystem:
    """Construct the root system of type ``kind`` and rank ``rank``.

    Raises:
        UnsupportedRankError: if the rank is below 1 (A), 2 (B, C) or 3 (D).
    """
    kind = str(kind).upper()
    if kind not in KINDS:
        raise UnsupportedRankError(f"unknown root system type {kind!r}")
    if int(rank) != rank or rank < _MIN_RANK[kind]:
        raise UnsupportedRankError(f"type {kind} needs rank >= {_MIN_RANK[kind]}, got {rank}")
    r = int(rank)
    dim, pos, simple, weights = _realize(kind, r)

    forms = []
    for v in pos:
        c = [_dot(v, lam) for lam in weights]
        if any(x.denominator != 1 for x in c):
            raise AssertionError("non-integral linear form")
        forms.append(tuple(int(x) for x in c))

    fixed = _FIXED_ORDER.get((kind, r))
    if fixed is not None:
        order = [forms.index(f) for f in fixed]
    else:
        order = sorted(range(len(forms)), key=lambda a: (sum(forms[a]), tuple(-x for x in forms[a])))
    pos = [pos[a] for a in order]
    forms = [forms[a] for a in order]
    simple_idx = tuple(pos.index(v) for v in simple)
    return RootSystem(
        kind=kind,
        rank=r,
        dim=dim,
        positive_coroots=tuple(pos),
        simple_coroots=simple_idx,
        fundamental_weights=tuple(weights),
        linear_forms=tuple(forms),
    )


def form_label(form: Sequence[int], names: Sequence[str] | None = None) -> str:
    """Render a linear form, e.g. ``(1, 2)`` -> ``"m1+2m2"``."""
    names = names or [f"m{i + 1}" for i in range(len(form))]
    parts = []
    for c, nm in zip(form, names):
        if c == 0:
            continue
        parts.append(nm if c == 1 else f"{c}{nm}")
    return "+".join(parts) if parts else "0"


def coroot_label(v: Sequence[int]) -> str:
    """Render an e-basis vector, e.g. ``(1, 0, -1)`` -> ``"e1-e3"``."""
    out = ""
    for i, c in enumerate(v):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f"{sign}{mag}e{i + 1}"
    return out or "0"


def beta_weights(rs: RootSystem, spec: SubsetSpec, beta: int) -> tuple[int, ...]:
    """Return ``b_i = <beta^vee, lambda_i>`` for a root ``beta`` in Delta*.

    Raises:
        NotInDeltaStarError: if ``b_k = 0``.
    """
    b = rs.linear_forms[beta]
    if b[spec.k - 1] == 0:
        raise NotInDeltaStarError(
            f"root {coroot_label(rs.positive_coroots[beta])} has zero coefficient at index {spec.k}"
        )
    return b


def pstar_pairing(rs: RootSystem, spec: SubsetSpec, beta: int, gamma: int, lam: WeightVector) -> Fraction:
    """Pairing of the projected coroot ``gamma^vee - (c_k(gamma)/b_k) beta^vee`` with ``lam``.

    Returns 0 for ``gamma == beta``.
    """
    b = beta_weights(rs, spec, beta)
    c = rs.linear_forms[gamma]
    k = spec.k - 1
    ratio = Fraction(c[k], b[k])
    return sum((m * (c[i - 1] - ratio * b[i - 1]) for i, m in lam.m), Fraction(0))


def star_roots(rs: RootSystem, spec: SubsetSpec) -> tuple[int, ...]:
    """Indices of the roots in Delta* (nonzero coefficient at ``k``).

    The order is the variable order of the generating function:

    * B_r with k = 1: ``2e1, e1-e2, ..., e1-er, e1+e2, ..., e1+er``;
    * D_r with k = 1: ``e1-e2, ..., e1-er, e1+e2, ..., e1+er``;
    * A_3 with k = 2: ``e1-e3, e2-e3, e2-e4, e1-e4``;
    * otherwise the canonical root order restricted to Delta*.
    """
    k = spec.k - 1
    idx = [a for a in range(rs.n_roots) if rs.linear_forms[a][k] != 0]
    r = rs.rank
    wanted: list[tuple[int, ...]] | None = None
    if rs.kind in ("B", "D") and spec.k == 1:
        n = rs.dim
        minus = [tuple([1] + [0] * (j - 1) + [-1] + [0] * (n - j - 1)) for j in range(1, n)]
        plus = [tuple([1] + [0] * (j - 1) + [1] + [0] * (n - j - 1)) for j in range(1, n)]
        wanted = ([tuple([2] + [0] * (n - 1))] if rs.kind == "B" else []) + minus + plus
    elif rs.kind == "A" and r == 3 and spec.k == 2:
        wanted = [(1, 0, -1, 0), (0, 1, -1, 0), (0, 1, 0, -1), (1, 0, 0, -1)]
    if wanted is not None:
        ordered = [rs.root_index(v) for v in wanted]
        assert sorted(ordered) == sorted(idx)
        return tuple(ordered)
    return tuple(idx)


def sub_roots(rs: RootSystem, spec: SubsetSpec) -> tuple[int, ...]:
    """Indices of the roots of the sub-system Delta_{I+} (zero coefficient at ``k``)."""
    k = spec.k - 1
    return tuple(a for a in range(rs.n_roots) if rs.linear_forms[a][k] == 0)


def star_labels(rs: RootSystem, spec: SubsetSpec) -> tuple[str, ...]:
    """Human-readable variable names for :func:`star_roots`."""
    out = []
    for a in star_roots(rs, spec):
        v = rs.positive_coroots[a]
        if rs.kind in ("B", "D") and spec.k == 1:
            if v[0] == 2:
                out.append("t1")
            else:
                j = next(i for i in range(1, len(v)) if v[i] != 0)
                out.append(f"t{'+' if v[j] > 0 else '-'}{j + 1}")
        elif rs.kind == "A":
            i = v.index(1)
            j = v.index(-1)
            out.append(f"t{i + 1}{j + 1}")
        else:
            out.append(f"t[{form_label(rs.linear_forms[a])}]")
    return tuple(out)
