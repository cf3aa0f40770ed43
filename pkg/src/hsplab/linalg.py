"""Exact integer linear algebra over products of cyclic groups.

Smith normal form with transform matrices, dual-group (character) arithmetic,
and reconstruction of a subgroup from sampled orthogonal characters.  All
arithmetic is arbitrary precision; no modular shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Callable, Optional, Sequence

from .errors import BoundExceeded, NotAbelian
from .core import BlackBoxGroup, GroupElement, enumerate_closure, enum_bound

Matrix = list[list[int]]


@dataclass(frozen=True)
class AbelianStructure:
    """Z_m1 x ... x Z_mk presented by its list of cyclic moduli."""

    moduli: tuple[int, ...]

    @property
    def exponent(self) -> int:
        return lcm(*self.moduli) if self.moduli else 1

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def reduce(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % m for x, m in zip(t, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for m in self.moduli:
            out = [t + (v,) for t in out for v in range(m)]
        return [tuple(t) for t in out]

    def pairing(self, c: Sequence[int], x: Sequence[int]) -> int:
        """Sum of c_j * x_j * (M/m_j) mod M; zero iff chi_c(x) = 1."""
        M = self.exponent
        return sum(cj * xj * (M // m) for cj, xj, m in zip(c, x, self.moduli)) % M


@dataclass(frozen=True)
class CharacterVector:
    """An element of the dual group: chi_c(x) = exp(2*pi*i * sum c_j x_j / m_j)."""

    coeffs: tuple[int, ...]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0])
    return [
        [sum(x * b[k][j] for k, x in enumerate(row)) for j in range(cols)]
        for row in a
    ]


def det(a: Matrix) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*a*V = D diagonal, d1 | d2 | ..., U, V unimodular."""
    rows, cols = len(a), len(a[0])
    D = [list(map(int, row)) for row in a]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(cols):
            D[i][k] -= q * D[j][k]
        for k in range(rows):
            U[i][k] -= q * U[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(rows):
            D[k][i] -= q * D[k][j]
        for k in range(cols):
            V[k][i] -= q * V[k][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for k in range(rows):
            D[k][i], D[k][j] = D[k][j], D[k][i]
        for k in range(cols):
            V[k][i], V[k][j] = V[k][j], V[k][i]

    t = 0
    while t < min(rows, cols):
        # Move a nonzero entry of minimal magnitude to the pivot position.
        # Re-selecting after every reduction pass keeps entries small (the
        # swap-in-place variant can blow entries up doubly exponentially).
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        remainder = False
        for i in range(t + 1, rows):
            if D[i][t]:
                row_op(i, t, D[i][t] // D[t][t])
                remainder = remainder or D[i][t] != 0
        for j in range(t + 1, cols):
            if D[t][j]:
                col_op(j, t, D[t][j] // D[t][t])
                remainder = remainder or D[t][j] != 0
        if remainder:
            continue  # a strictly smaller entry exists; take it as the pivot
        # Row and column are clear; enforce the divisibility chain.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % D[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offending row to the pivot row
            continue
        if D[t][t] < 0:
            for k in range(cols):
                D[t][k] = -D[t][k]
            for k in range(rows):
                U[t][k] = -U[t][k]
        t += 1
    return U, D, V


def row_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite-style basis of the lattice generated by the given rows."""
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return []
    cols = len(work[0])
    basis: list[list[int]] = []
    pivot_col = 0
    r = 0
    while pivot_col < cols and r < len(work):
        # gcd-eliminate column pivot_col among rows r..end
        while True:
            live = [i for i in range(r, len(work)) if work[i][pivot_col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(work[i][pivot_col]))
            i0 = live[0]
            for i in live[1:]:
                q = work[i][pivot_col] // work[i0][pivot_col]
                work[i] = [x - q * y for x, y in zip(work[i], work[i0])]
        live = [i for i in range(r, len(work)) if work[i][pivot_col] != 0]
        if live:
            work[r], work[live[0]] = work[live[0]], work[r]
            if work[r][pivot_col] < 0:
                work[r] = [-x for x in work[r]]
            r += 1
        pivot_col += 1
    return [row for row in work[:r] if any(row)]


def lattice_solutions(B: Matrix, modulus: int) -> list[list[int]]:
    """Basis of the lattice {x in Z^k : B x = 0 (mod modulus)}."""
    k = len(B[0])
    _, D, V = smith_normal_form(B)
    # d == 0 (no constraint) -> free coordinate
    mults = []
    for i in range(k):
        d = D[i][i] if i < len(D) else 0
        mults.append(1 if d == 0 else modulus // gcd(d, modulus))
    basis = []
    for j in range(k):
        basis.append([V[row][j] * mults[j] for row in range(k)])
    return basis


def _congruence_kernel(rows: list[list[int]], structure: AbelianStructure) -> list[tuple[int, ...]]:
    """Generators of {x in structure : pairing(row, x) = 0 for every row}."""
    k = len(structure.moduli)
    if k == 0:
        return []
    M = structure.exponent
    if not rows:
        rows = [[0] * k]
    B = [[r[j] * (M // structure.moduli[j]) for j in range(k)] for r in rows]
    basis = lattice_solutions(B, M)
    reduced = [structure.reduce(v) for v in basis]
    # include the trivial relations so reduction mod moduli is complete
    out = row_basis(reduced)
    gens = []
    for v in out:
        t = structure.reduce(v)
        if any(t):
            gens.append(t)
    return gens


def dual_subgroup(
    structure: AbelianStructure, h_gens: Sequence[Sequence[int]]
) -> list[CharacterVector]:
    """Generators of H-perp, the characters trivial on <h_gens>."""
    rows = [list(structure.reduce(h)) for h in h_gens]
    return [CharacterVector(t) for t in _congruence_kernel(rows, structure)]


def solve_character_kernel(
    structure: AbelianStructure, samples: Sequence[Sequence[int]]
) -> list[tuple[int, ...]]:
    """Generators of the joint kernel of the sampled characters."""
    rows = [list(structure.reduce(tuple(c))) for c in samples]
    return _congruence_kernel(rows, structure)


def subgroup_order(structure: AbelianStructure, gens: Sequence[Sequence[int]]) -> int:
    """Order of the subgroup of `structure` generated by the tuples."""
    k = len(structure.moduli)
    if k == 0:
        return 1
    rows = [list(structure.reduce(g)) for g in gens]
    rows += [[structure.moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    _, D, _ = smith_normal_form(rows)
    index = prod(D[i][i] for i in range(k))
    return structure.order // index


def subgroup_elements(
    structure: AbelianStructure, gens: Sequence[Sequence[int]]
) -> list[tuple[int, ...]]:
    """All elements of the subgroup generated by the tuples (BFS closure)."""
    zero = structure.zero()
    seen = {zero}
    frontier = [zero]
    gens = [structure.reduce(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = structure.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def hom_kernel(
    domain_moduli: Sequence[int],
    image_rows: Sequence[Sequence[int]],
    codomain: AbelianStructure,
) -> list[tuple[int, ...]]:
    """Kernel generators of the homomorphism Z_domain -> codomain.

    image_rows[i] is the codomain tuple of the i-th unit vector of the domain.
    """
    r = len(domain_moduli)
    if r == 0:
        return []
    if not codomain.moduli:
        # everything maps to the trivial group
        gens = []
        for i, s in enumerate(domain_moduli):
            if s > 1:
                unit = [0] * r
                unit[i] = 1
                gens.append(tuple(unit))
        return gens
    L = codomain.exponent
    B = []
    for j, mu in enumerate(codomain.moduli):
        B.append([image_rows[i][j] * (L // mu) for i in range(r)])
    basis = lattice_solutions(B, L)
    reduced = [[x % m for x, m in zip(v, domain_moduli)] for v in basis]
    out = []
    for v in row_basis(reduced):
        t = tuple(x % m for x, m in zip(v, domain_moduli))
        if any(t):
            out.append(t)
    return out


class GroupView:
    """Minimal multiplicative view: identity, mul, inv, and a canonical key.

    Used to run Abelian structure computations uniformly over black-box
    groups, hidden-subgroup label quotients, and generated-subgroup coset
    quotients.
    """

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def key(self, a) -> str:
        raise NotImplementedError

    def hkey(self, a) -> str:
        """Harness-privileged key (default: same as key)."""
        return self.key(a)

    def pow(self, g, k: int):
        if k < 0:
            g, k = self.inv(g), -k
        result = self.identity()
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            if k >> 1:
                base = self.mul(base, base)
            k >>= 1
        return result

    def commute(self, a, b) -> bool:
        return self.key(self.mul(a, b)) == self.key(self.mul(b, a))


class BlackBoxView(GroupView):
    """The group itself, equality by its canonical key."""

    def __init__(self, G: BlackBoxGroup):
        self.group = G

    def identity(self):
        return self.group.identity()

    def mul(self, a, b):
        return self.group.multiply(a, b)

    def inv(self, a):
        return self.group.invert(a)

    def key(self, a) -> str:
        return self.group.key(a)


class LabelQuotientView(GroupView):
    """G modulo a hidden normal subgroup: equality via f-labels."""

    def __init__(self, G: BlackBoxGroup, f):
        self.group = G
        self.oracle = f

    def identity(self):
        return self.group.identity()

    def mul(self, a, b):
        return self.group.multiply(a, b)

    def inv(self, a):
        return self.group.invert(a)

    def key(self, a) -> str:
        return self.oracle.eval(a)

    def hkey(self, a) -> str:
        return self.oracle.peek(a)


class CosetQuotientView(GroupView):
    """G modulo a normal subgroup given by its enumerated elements."""

    def __init__(self, G: BlackBoxGroup, n_elements: Sequence[GroupElement]):
        self.group = G
        self.n_elements = list(n_elements)
        self._cache: dict[str, str] = {}

    def identity(self):
        return self.group.identity()

    def mul(self, a, b):
        return self.group.multiply(a, b)

    def inv(self, a):
        return self.group.invert(a)

    def key(self, a) -> str:
        gkey = self.group.key(a)
        cached = self._cache.get(gkey)
        if cached is None:
            cached = min(
                self.group.key(self.group.multiply(a, n)) for n in self.n_elements
            )
            self._cache[gkey] = cached
        return cached


def view_closure(view: GroupView, seeds, bound: Optional[int] = None):
    """Distinct elements of <seeds> under the view's equality, BFS order."""
    bound = bound or enum_bound()
    identity = view.identity()
    seen = {view.key(identity): identity}
    frontier = [identity]
    gens = list(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = view.mul(x, s)
                ky = view.key(y)
                if ky not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"closure exceeds bound {bound}")
                    seen[ky] = y
                    nxt.append(y)
        frontier = nxt
    return list(seen.values())


class AbelianDecomposition:
    """Isomorphism of an Abelian (sub)group with a product of cyclic groups
    of prime power order, with bidirectional element <-> tuple tables."""

    def __init__(self, view: GroupView, structure: AbelianStructure, basis, to_tuple, elements):
        self.view = view
        self.structure = structure
        self.basis = basis  # elements whose orders are the prime-power moduli
        self._to_tuple = to_tuple  # view key -> tuple
        self._from_tuple = {}
        self.elements = elements
        for key, t in to_tuple.items():
            self._from_tuple.setdefault(t, key)
        self._element_by_key = {view.key(x): x for x in elements}

    def tuple_of(self, x) -> tuple[int, ...]:
        return self._to_tuple[self.view.key(x)]

    def element_of(self, t: Sequence[int]):
        t = self.structure.reduce(t)
        return self._element_by_key[self._from_tuple[t]]


def _order_in(view: GroupView, x, key_of_identity: str, cap: int) -> int:
    cur = x
    for i in range(1, cap + 1):
        if view.key(cur) == key_of_identity:
            return i
        cur = view.mul(cur, x)
    raise BoundExceeded("element order exceeds cap")


def decompose_abelian(
    source,
    gens: Optional[Sequence] = None,
    bound: Optional[int] = None,
) -> AbelianDecomposition:
    """Decompose the Abelian group generated by `gens` (classical stand-in for
    the quantum decomposition of Abelian black-box groups; quantum-replaceable).

    `source` is a BlackBoxGroup or a GroupView.  Raises NotAbelian if the
    generators do not commute, BoundExceeded past the enumeration bound.
    """
    view = BlackBoxView(source) if isinstance(source, BlackBoxGroup) else source
    if gens is None:
        gens = source.generators if isinstance(source, BlackBoxGroup) else []
    gens = list(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not view.commute(gens[i], gens[j]):
                raise NotAbelian("generators do not commute")
    elements = view_closure(view, gens, bound)
    order = len(elements)
    id_key = view.key(view.identity())

    # Invariant-factor basis: repeatedly pick a coset of maximal order in
    # G/<chosen> and fix the lift so its order in G matches the coset order.
    chosen = []
    k_elements = [view.identity()]
    k_keys = {id_key}
    invariant_orders = []
    while len(k_elements) < order:
        best, best_t = None, 0
        for x in elements:
            kx = view.key(x)
            if kx in k_keys:
                continue
            cur = x
            t = 1
            while view.key(cur) not in k_keys:
                cur = view.mul(cur, x)
                t += 1
            if t > best_t:
                best, best_t = x, t
        lift = None
        for h in k_elements:
            cand = view.mul(best, h)
            if _order_in(view, cand, id_key, order) == best_t:
                lift = cand
                break
        assert lift is not None, "maximal-order lift must exist in an Abelian group"
        chosen.append(lift)
        invariant_orders.append(best_t)
        k_elements = view_closure(view, chosen, bound)
        k_keys = {view.key(x) for x in k_elements}

    # Split invariant factors into prime-power cyclic components.
    from sympy import factorint

    basis = []
    moduli = []
    for b, m in zip(chosen, invariant_orders):
        for p, a in sorted(factorint(m).items()):
            q = p**a
            basis.append(view.pow(b, m // q))
            moduli.append(q)
    structure = AbelianStructure(tuple(moduli))

    # Build the bidirectional tables by enumerating all exponent tuples.
    to_tuple: dict[str, tuple[int, ...]] = {id_key: structure.zero()}
    reps = {structure.zero(): view.identity()}
    frontier = [structure.zero()]
    units = []
    for i in range(len(moduli)):
        unit = [0] * len(moduli)
        unit[i] = 1
        units.append(tuple(unit))
    while frontier:
        nxt = []
        for t in frontier:
            x = reps[t]
            for i, u in enumerate(units):
                t2 = structure.add(t, u)
                if t2 not in reps:
                    y = view.mul(x, basis[i])
                    reps[t2] = y
                    to_tuple[view.key(y)] = t2
                    nxt.append(t2)
        frontier = nxt
    assert len(to_tuple) == order, "decomposition tables must cover the group"
    return AbelianDecomposition(view, structure, basis, to_tuple, elements)
