"""Finite abelian groups in invariant-factor form.

A group is a divisibility chain d_1 | d_2 | ... | d_k with every d_i >= 2;
elements are coordinate tuples reduced modulo the chain.  A subgroup is
stored as the unique Hermite-form basis of the lattice it spans together
with the relation lattice diag(d_1, ..., d_k), so subgroup equality is
basis equality.  Q/Z values are exact reduced residues; there is no
floating point anywhere in this package.

>>> A = make_group([4, 2])
>>> A.invariants
(2, 4)
>>> quotient(A, subgroup_from_generators(A, [A.element((0, 2))])).invariants
(2, 2)
"""

from __future__ import annotations

import os
from itertools import combinations, product
from math import gcd, prod

from .errors import (
    AmbientMismatchError,
    EnumerationBoundError,
    InvalidInvariantError,
    PairingMismatchError,
    PreconditionError,
)

DEFAULT_ENUM_LIMIT = 4096

__all__ = [
    "QmodZ",
    "FinAbGroup",
    "Element",
    "Subgroup",
    "make_group",
    "dual_group",
    "eval_character",
    "subgroup_from_generators",
    "quotient",
    "enumerate_subgroups",
    "embeds_into",
    "reduce_tuple",
    "replay_ops",
    "enum_limit",
]


def enum_limit(override: int | None = None) -> int:
    """Active exhaustive-enumeration bound (env SPLITBOUND_ENUM_LIMIT wins)."""
    if override is not None:
        return override
    raw = os.environ.get("SPLITBOUND_ENUM_LIMIT")
    return int(raw) if raw else DEFAULT_ENUM_LIMIT


def _check_limit(order: int, override: int | None = None) -> None:
    bound = enum_limit(override)
    if order > bound:
        raise EnumerationBoundError(order, bound)


class QmodZ:
    """Element of Q/Z as a reduced residue num/den, 0 <= num < den."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("Q/Z denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def zero(cls) -> "QmodZ":
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.num, self.den)

    def __mul__(self, n: int) -> "QmodZ":
        return QmodZ(self.num * n, self.den)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QmodZ)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "QmodZ":
        num, _, den = text.partition("/")
        return cls(int(num), int(den) if den else 1)


def _canonical_chain(entries) -> tuple[int, ...]:
    """Merge arbitrary cyclic orders into the invariant-factor chain."""
    buckets: dict[int, list[int]] = {}
    for n in entries:
        if n < 2:
            raise InvalidInvariantError(f"invariant factor {n} < 2")
        m = n
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                buckets.setdefault(p, []).append(e)
            p += 1
        if m > 1:
            buckets.setdefault(m, []).append(1)
    depth = max((len(v) for v in buckets.values()), default=0)
    chain = []
    for level in range(depth):
        d = 1
        for p, exps in buckets.items():
            exps.sort(reverse=True)
            if level < len(exps):
                d *= p ** exps[level]
        chain.append(d)
    chain.reverse()
    return tuple(chain)


class FinAbGroup:
    """Finite abelian group given by its invariant-factor chain."""

    __slots__ = ("invariants",)

    def __init__(self, invariants):
        self.invariants = _canonical_chain(invariants)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, (0,) * self.rank)

    def elements(self):
        """All elements in lexicographic coordinate order."""
        for coords in product(*(range(d) for d in self.invariants)):
            yield Element(self, coords)

    def is_elementary(self) -> bool:
        inv = self.invariants
        return bool(inv) and all(d == inv[0] for d in inv) and _is_prime(inv[0])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinAbGroup) and self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    def __repr__(self) -> str:
        return f"FinAbGroup{list(self.invariants)}"


class Element:
    """Group element as a residue tuple; addition is componentwise."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FinAbGroup, coords):
        coords = tuple(coords)
        if len(coords) != group.rank:
            raise AmbientMismatchError(
                f"expected {group.rank} coordinates, got {len(coords)}"
            )
        self.group = group
        self.coords = tuple(c % d for c, d in zip(coords, group.invariants))

    def _check(self, other: "Element") -> None:
        if self.group != other.group:
            raise AmbientMismatchError("elements of different groups")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.group, tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "Element":
        return Element(self.group, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> int:
        n = 1
        for c, d in zip(self.coords, self.group.invariants):
            if c:
                n = n * (d // gcd(c, d)) // gcd(n, d // gcd(c, d))
        return n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Element)
            and self.group == other.group
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.group.invariants, self.coords))

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Integer lattice normal forms
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf(rows, k: int) -> list[list[int]]:
    """Row Hermite form of a full-rank lattice: upper triangular, positive
    pivots, entries above each pivot reduced into [0, pivot)."""
    work = [list(r) for r in rows if any(r)]
    result: list[list[int]] = []
    for col in range(k):
        carrier = None
        rest = []
        for r in work:
            if r[col] == 0:
                rest.append(r)
                continue
            if carrier is None:
                carrier = r
                continue
            g, x, y = _xgcd(carrier[col], r[col])
            a, b = carrier[col] // g, r[col] // g
            merged = [x * u + y * v for u, v in zip(carrier, r)]
            residue = [a * v - b * u for u, v in zip(carrier, r)]
            carrier = merged
            if any(residue):
                rest.append(residue)
        if carrier is not None:
            if carrier[col] < 0:
                carrier = [-u for u in carrier]
            pivot = carrier[col]
            for prow in result:
                q = prow[col] // pivot
                if q:
                    for t in range(col, k):
                        prow[t] -= q * carrier[t]
            result.append(carrier)
        work = rest
    return result


def _lattice_coefficients(basis, vec, k: int):
    """Coefficients expressing vec over the Hermite basis, or None."""
    v = list(vec)
    coeffs = [0] * k
    for i in range(k):
        p = basis[i][i]
        if v[i] % p:
            return None
        c = v[i] // p
        coeffs[i] = c
        if c:
            row = basis[i]
            for t in range(i, k):
                v[t] -= c * row[t]
    return coeffs


def _plocal_cokernel_exponents(mat, k: int, p: int, cap: int) -> list[int]:
    """Exponent profile of the p-part of coker(mat) via pivoting on the
    entry of least p-adic valuation, working modulo p**cap.

    Requires every elementary divisor valuation < cap (true here: matrix
    determinants divide the ambient group order).
    """
    m = p ** cap
    a = [[x % m for x in row] for row in mat]
    exps = []
    for step in range(k):
        best_v = cap + 1
        bi = bj = -1
        for i in range(step, k):
            row = a[i]
            for j in range(step, k):
                x = row[j]
                if x == 0:
                    continue
                v = 0
                while x % p == 0:
                    x //= p
                    v += 1
                if v < best_v:
                    best_v, bi, bj = v, i, j
                    if v == 0:
                        break
            if best_v == 0:
                break
        if bi < 0:
            raise ArithmeticError("cokernel not finite modulo p**cap")
        if bi != step:
            a[bi], a[step] = a[step], a[bi]
        if bj != step:
            for row in a:
                row[bj], row[step] = row[step], row[bj]
        v = best_v
        pv = p ** v
        unit_inv = pow(a[step][step] // pv, -1, m)
        srow = a[step]
        for j in range(step, k):
            srow[j] = (srow[j] * unit_inv) % m
        for i in range(step + 1, k):
            row = a[i]
            x = row[step]
            if x:
                f = x // pv
                for j in range(step, k):
                    row[j] = (row[j] - f * srow[j]) % m
        exps.append(v)
    exps.sort()
    return exps


def _cokernel_invariants(mat, k: int, order: int) -> tuple[int, ...]:
    """Invariant factors (> 1, ascending) of Z^k / rowspan(mat) where the
    cokernel order is known to divide `order`."""
    if k == 0 or order == 1:
        return ()
    chain = [1] * k
    for p, e in _factorize(order).items():
        exps = _plocal_cokernel_exponents(mat, k, p, e + 1)
        for i, v in enumerate(exps):
            chain[i] *= p ** v
    return tuple(d for d in chain if d > 1)


def _snf_with_transforms(mat, k: int):
    """Smith form with transforms: returns (diag, U, Uinv, V) where
    U * mat * V = diag(d) with d_i | d_{i+1} and U, V unimodular."""
    a = [list(row) for row in mat]
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    Uinv = [[int(i == j) for j in range(k)] for i in range(k)]
    V = [[int(i == j) for j in range(k)] for i in range(k)]

    def row_sub(i, j, q):  # row_i -= q * row_j
        for t in range(k):
            a[i][t] -= q * a[j][t]
            U[i][t] -= q * U[j][t]
        for t in range(k):
            Uinv[t][j] += q * Uinv[t][i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for t in range(k):
            Uinv[t][i], Uinv[t][j] = Uinv[t][j], Uinv[t][i]

    def row_neg(i):
        for t in range(k):
            a[i][t] = -a[i][t]
            U[i][t] = -U[i][t]
        for t in range(k):
            Uinv[t][i] = -Uinv[t][i]

    def col_sub(i, j, q):  # col_i -= q * col_j
        for t in range(k):
            a[t][i] -= q * a[t][j]
            V[t][i] -= q * V[t][j]

    def col_swap(i, j):
        for t in range(k):
            a[t][i], a[t][j] = a[t][j], a[t][i]
            V[t][i], V[t][j] = V[t][j], V[t][i]

    def col_neg(i):
        for t in range(k):
            a[t][i] = -a[t][i]
            V[t][i] = -V[t][i]

    for s in range(k):
        while True:
            bi = bj = -1
            best = None
            for i in range(s, k):
                for j in range(s, k):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best):
                        best, bi, bj = abs(x), i, j
            if bi < 0:
                break
            if bi != s:
                row_swap(bi, s)
            if bj != s:
                col_swap(bj, s)
            if a[s][s] < 0:
                row_neg(s)
            dirty = False
            for i in range(s + 1, k):
                q = a[i][s] // a[s][s]
                if q:
                    row_sub(i, s, q)
                if a[i][s]:
                    dirty = True
            for j in range(s + 1, k):
                q = a[s][j] // a[s][s]
                if q:
                    col_sub(j, s, q)
                if a[s][j]:
                    dirty = True
            if dirty:
                continue
            piv = a[s][s]
            offender = None
            for i in range(s + 1, k):
                for j in range(s + 1, k):
                    if a[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(s, offender, -1)  # fold the offending row into the pivot row
    diag = [a[i][i] for i in range(k)]
    return diag, U, Uinv, V


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------

class Subgroup:
    """Canonical subgroup: Hermite basis of its lattice over the relations."""

    __slots__ = ("ambient", "basis", "order", "_sub_invariants", "_canon")

    def __init__(self, ambient: FinAbGroup, basis):
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in basis)
        det = prod(self.basis[i][i] for i in range(ambient.rank))
        self.order = ambient.order // det
        self._sub_invariants = None
        self._canon = None

    @property
    def sub_invariants(self) -> tuple[int, ...]:
        if self._sub_invariants is None:
            if self.order == 1:
                self._sub_invariants = ()
            else:
                k = self.ambient.rank
                rel = _relation_matrix(self.ambient.invariants, self.basis, k)
                self._sub_invariants = _cokernel_invariants(rel, k, self.order)
        return self._sub_invariants

    def contains_element(self, el: Element) -> bool:
        if el.group != self.ambient:
            raise AmbientMismatchError("element of a different group")
        return _lattice_coefficients(self.basis, el.coords, self.ambient.rank) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("subgroups of different groups")
        k = self.ambient.rank
        return all(
            _lattice_coefficients(self.basis, row, k) is not None
            for row in other.basis
        )

    def elements(self):
        """All elements of the subgroup (each exactly once)."""
        k = self.ambient.rank
        inv = self.ambient.invariants
        ranges = [range(inv[i] // self.basis[i][i]) for i in range(k)]
        for cs in product(*ranges):
            coords = [0] * k
            for i, c in enumerate(cs):
                if c:
                    row = self.basis[i]
                    for t in range(i, k):
                        coords[t] += c * row[t]
            yield Element(self.ambient, coords)

    def canonical_basis(self) -> list[Element]:
        """Generators realizing sub_invariants as a direct-sum decomposition
        (ascending orders, matching sub_invariants)."""
        if self._canon is None:
            k = self.ambient.rank
            if self.order == 1:
                self._canon = []
            else:
                rel = _relation_matrix(self.ambient.invariants, self.basis, k)
                relT = [[rel[j][i] for j in range(k)] for i in range(k)]
                diag, _u, uinv, _v = _snf_with_transforms(relT, k)
                gens = []
                for t in range(k):
                    d = abs(diag[t])
                    if d <= 1:
                        continue
                    coords = [0] * k
                    for j in range(k):
                        c = uinv[j][t]
                        if c:
                            row = self.basis[j]
                            for s in range(j, k):
                                coords[s] += c * row[s]
                    gens.append((d, Element(self.ambient, coords)))
                gens.sort(key=lambda t: t[0])
                assert tuple(d for d, _ in gens) == self.sub_invariants
                self._canon = [g for _, g in gens]
        return list(self._canon)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient.invariants, self.basis))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.ambient!r})"


def _relation_matrix(invariants, basis, k: int):
    """Rows expressing d_i * e_i over the subgroup basis (always integral)."""
    rel = []
    for i in range(k):
        vec = [0] * k
        vec[i] = invariants[i]
        coeffs = _lattice_coefficients(basis, vec, k)
        assert coeffs is not None
        rel.append(coeffs)
    return rel


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def make_group(invariants) -> FinAbGroup:
    """Group from arbitrary cyclic orders, e.g. [2, 3] -> chain (6,)."""
    return FinAbGroup(invariants)


def dual_group(a: FinAbGroup) -> FinAbGroup:
    """Character group; isomorphic to the group itself (same invariants)."""
    return FinAbGroup(a.invariants)


def eval_character(chi: Element, a: Element) -> QmodZ:
    """Pairing <chi, a> = sum chi_i a_i / d_i in Q/Z; bilinear and perfect."""
    if chi.group.invariants != a.group.invariants:
        raise PairingMismatchError(
            f"character group {chi.group!r} does not pair with {a.group!r}"
        )
    total = QmodZ.zero()
    for x, y, d in zip(chi.coords, a.coords, a.group.invariants):
        total = total + QmodZ(x * y, d)
    return total


def subgroup_from_generators(a: FinAbGroup, gens) -> Subgroup:
    """Canonical subgroup spanned by the generators (empty -> trivial)."""
    k = a.rank
    rows = []
    for g in gens:
        if g.group != a:
            raise AmbientMismatchError("generator from a different group")
        rows.append(list(g.coords))
    for i, d in enumerate(a.invariants):
        rel = [0] * k
        rel[i] = d
        rows.append(rel)
    basis = _hnf(rows, k)
    assert len(basis) == k
    return Subgroup(a, basis)


def trivial_subgroup(a: FinAbGroup) -> Subgroup:
    return subgroup_from_generators(a, [])


def full_subgroup(a: FinAbGroup) -> Subgroup:
    return subgroup_from_generators(a, [a.element(row) for row in _unit_rows(a.rank)])


def _unit_rows(k: int):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def quotient(a: FinAbGroup, s: Subgroup) -> FinAbGroup:
    """Invariant factors of A/S."""
    if s.ambient != a:
        raise AmbientMismatchError("subgroup of a different group")
    k = a.rank
    q_order = a.order // s.order
    return FinAbGroup(_cokernel_invariants([list(r) for r in s.basis], k, q_order))


# -- exhaustive subgroup enumeration ----------------------------------------

_BASIS_CACHE: dict[tuple[int, ...], list[bytes]] = {}
_BASIS_CACHE_MAX_ENTRIES = 4
_BASIS_CACHE_MIN_COUNT = 20000


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _iter_bases_general(invariants: tuple[int, ...]):
    """All Hermite bases of lattices between diag(invariants) and Z^k.

    Rows are produced bottom-up; each candidate row is kept only if the
    relation d_i * e_i stays inside the partial lattice, which depends on
    rows i..k-1 alone.
    """
    k = len(invariants)
    if k == 0:
        yield ()
        return
    divisors = [_divisors(d) for d in invariants]

    def rec(i: int, rows_below: list[tuple[int, ...]]):
        # rows_below[j] is the full row for position i+1+j
        if i < 0:
            yield tuple(rows_below)
            return
        piv_choices = divisors[i]
        below_pivots = [rows_below[j][i + 1 + j] for j in range(k - i - 1)]
        for h in piv_choices:
            c = invariants[i] // h
            for tail in product(*(range(p) for p in below_pivots)):
                # membership of d_i * e_i: residual after subtracting c*row
                v = [(-c) * t for t in tail]
                ok = True
                for j in range(k - i - 1):
                    p = below_pivots[j]
                    x = v[j]
                    if x % p:
                        ok = False
                        break
                    q = x // p
                    if q:
                        row = rows_below[j]
                        for s in range(j + 1, k - i - 1):
                            v[s] -= q * row[i + 1 + s]
                if not ok:
                    continue
                row = (0,) * i + (h,) + tail
                yield from rec(i - 1, [row] + rows_below)

    yield from rec(k - 1, [])


def _iter_bases_elementary(p: int, k: int):
    """Waste-free echelon-form generation for (Z/p)^k."""
    unit_rows = [tuple(p * int(i == j) for j in range(k)) for i in range(k)]
    for r in range(k + 1):
        for pivots in combinations(range(k), r):
            pivset = set(pivots)
            free_cols = [
                [j for j in range(c + 1, k) if j not in pivset] for c in pivots
            ]
            nfree = sum(len(f) for f in free_cols)
            for assign in product(range(p), repeat=nfree):
                rows = list(unit_rows)
                pos = 0
                for idx, c in enumerate(pivots):
                    row = [0] * k
                    row[c] = 1
                    for j in free_cols[idx]:
                        row[j] = assign[pos]
                        pos += 1
                    rows[c] = tuple(row)
                yield tuple(rows)


def _iter_bases(invariants: tuple[int, ...]):
    if invariants and all(d == invariants[0] for d in invariants) and _is_prime(invariants[0]):
        yield from _iter_bases_elementary(invariants[0], len(invariants))
    else:
        yield from _iter_bases_general(invariants)


def _pack(basis, k: int) -> bytes:
    return bytes(x for row in basis for x in row)


def _unpack(blob: bytes, k: int):
    return tuple(tuple(blob[i * k : (i + 1) * k]) for i in range(k))


def iter_subgroup_bases(a: FinAbGroup, limit: int | None = None):
    """Internal streaming enumeration of canonical bases (unsorted but
    deterministic); caches the packed list for expensive groups."""
    _check_limit(a.order, limit)
    inv = a.invariants
    k = len(inv)
    cached = _BASIS_CACHE.get(inv)
    if cached is not None:
        for blob in cached:
            yield _unpack(blob, k)
        return
    packable = not inv or max(inv) < 256
    collected: list[bytes] | None = [] if packable else None
    count = 0
    for basis in _iter_bases(inv):
        count += 1
        if collected is not None:
            collected.append(_pack(basis, k))
        yield basis
    if collected is not None and count >= _BASIS_CACHE_MIN_COUNT:
        if len(_BASIS_CACHE) >= _BASIS_CACHE_MAX_ENTRIES:
            _BASIS_CACHE.pop(next(iter(_BASIS_CACHE)))
        _BASIS_CACHE[inv] = collected


def enumerate_subgroups(a: FinAbGroup, limit: int | None = None) -> list[Subgroup]:
    """All subgroups, canonical, ordered by descending order then basis."""
    subs = [Subgroup(a, basis) for basis in iter_subgroup_bases(a, limit)]
    subs.sort(key=lambda s: (-s.order, s.basis))
    return subs


def embeds_into(a: FinAbGroup, b: FinAbGroup, limit: int | None = None) -> bool:
    """True iff A is isomorphic to a subgroup of B (equivalently, by
    subgroup/quotient duality, to a quotient of B); decided by exhaustive
    subgroup enumeration of B."""
    target = a.invariants
    order = a.order
    if order > b.order or b.order % order:
        _check_limit(b.order, limit)
        return False
    k = b.rank
    inv = b.invariants
    for basis in iter_subgroup_bases(b, limit):
        det = 1
        for i in range(k):
            det *= basis[i][i]
        if b.order // det != order:
            continue
        if Subgroup(b, basis).sub_invariants == target:
            return True
    return False


# -- elementary-operation tuple reduction -----------------------------------

def reduce_tuple(a: FinAbGroup, xi) -> tuple[list[tuple], list[Element]]:
    """Reduce an s-tuple (s >= rank) to one with at most rank(A) nonzero
    entries using only ops (i, j): xi_i -= xi_j, plus logged position swaps.

    Returns (ops_log, reduced).  Ops are ("sub", i, j) and ("swap", i, j)
    with 0-based positions; replaying the log on the input reproduces the
    output and the generated subgroup never changes along the way.
    """
    xs = list(xi)
    for x in xs:
        if x.group != a:
            raise AmbientMismatchError("tuple entry from a different group")
    s = len(xs)
    k = a.rank
    if s < k:
        raise PreconditionError(f"tuple length {s} < rank {k}")
    coords = [list(x.coords) for x in xs]
    inv = a.invariants
    log: list[tuple] = []

    def op_sub(i: int, j: int):
        ci, cj = coords[i], coords[j]
        for t in range(k):
            ci[t] = (ci[t] - cj[t]) % inv[t]
        log.append(("sub", i, j))

    def op_swap(i: int, j: int):
        coords[i], coords[j] = coords[j], coords[i]
        log.append(("swap", i, j))

    def clear_pair(lead: int, tail: int, c: int):
        # Euclidean steps on coordinate c; afterwards coords[tail][c] == 0.
        # Ties subtract the later position from the earlier one.
        while coords[tail][c] != 0:
            if coords[lead][c] == 0:
                op_swap(lead, tail)
                break
            if coords[lead][c] >= coords[tail][c]:
                op_sub(lead, tail)
            else:
                op_sub(tail, lead)

    def reduce_block(first: int, ncoords: int):
        # entries first..s-1 live in the subgroup with coordinates < ncoords
        if ncoords == 0 or first >= s:
            return
        c = ncoords - 1
        for j in range(first + 1, s):
            clear_pair(first, j, c)
        reduce_block(first + 1, ncoords - 1)

    reduce_block(0, k)
    reduced = [Element(a, cs) for cs in coords]
    nonzero = sum(1 for el in reduced if not el.is_zero())
    assert nonzero <= k
    return log, reduced


def replay_ops(a: FinAbGroup, xi, ops) -> list[Element]:
    """Apply a reduce_tuple ops log to a fresh copy of the tuple."""
    xs = [Element(a, x.coords) for x in xi]
    for op in ops:
        kind, i, j = op
        if kind == "sub":
            xs[i] = xs[i] - xs[j]
        elif kind == "swap":
            xs[i], xs[j] = xs[j], xs[i]
        else:
            raise PreconditionError(f"unknown op {kind!r}")
    return xs
