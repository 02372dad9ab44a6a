"""Exact model of the double cover T_n of the symmetric group.

T_n is realized inside the Clifford algebra on generators e_1..e_n with
e_i^2 = 1 and e_i e_j = -e_j e_i, over the exact coefficient ring of
numbers a + b*sqrt(2) with rational a, b.  The lifted Coxeter generators
are t_i = (e_i - e_{i+1})/sqrt(2) and the central involution z is the
scalar -1, so group equality, products, and the sign cocycle of a section
are all decided by exact arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import TwistTable
from .errors import SectionConsistencyError
from .rack import Permutation, transposition_pairs, transposition_rack

# Coefficient masks carry one bit per generator; elements of the cover have
# at most 2^(n-1) terms, so n is capped to keep elements a few MB at most.
DEFAULT_N_CAP = 12


@dataclass(frozen=True)
class QuadScalar:
    """An element a + b*sqrt(2) of the real quadratic field Q(sqrt(2))."""

    a: Fraction
    b: Fraction

    @staticmethod
    def of(a, b=0) -> QuadScalar:
        return QuadScalar(Fraction(a), Fraction(b))

    def __add__(self, other: QuadScalar) -> QuadScalar:
        return QuadScalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other: QuadScalar) -> QuadScalar:
        return QuadScalar(self.a - other.a, self.b - other.b)

    def __neg__(self) -> QuadScalar:
        return QuadScalar(-self.a, -self.b)

    def __mul__(self, other: QuadScalar) -> QuadScalar:
        return QuadScalar(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


Q_ZERO = QuadScalar.of(0)
Q_ONE = QuadScalar.of(1)
Q_MINUS_ONE = QuadScalar.of(-1)
Q_INV_SQRT2 = QuadScalar.of(0, Fraction(1, 2))  # 1/sqrt(2) = (1/2)*sqrt(2)


class CliffordElement:
    """A finite sum of basis monomials e_S, S a subset mask of {1..n}.

    Basis monomials are products of generators in increasing index order;
    multiplication tracks the anticommutation sign and e_i^2 = 1.  Terms
    with zero coefficient are never stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[int, QuadScalar]):
        self.n = n
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(n: int) -> CliffordElement:
        return CliffordElement(n, {})

    @staticmethod
    def scalar(n: int, c) -> CliffordElement:
        if not isinstance(c, QuadScalar):
            c = QuadScalar.of(c)
        return CliffordElement(n, {0: c})

    @staticmethod
    def one(n: int) -> CliffordElement:
        return CliffordElement.scalar(n, 1)

    @staticmethod
    def basis_vector(n: int, i: int) -> CliffordElement:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return CliffordElement(n, {1 << (i - 1): Q_ONE})

    def __add__(self, other: CliffordElement) -> CliffordElement:
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Q_ZERO) + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return CliffordElement(self.n, terms)

    def __sub__(self, other: CliffordElement) -> CliffordElement:
        return self + (-other)

    def __neg__(self) -> CliffordElement:
        return CliffordElement(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> CliffordElement:
        if not isinstance(c, QuadScalar):
            c = QuadScalar.of(c)
        return CliffordElement(self.n, {m: co * c for m, co in self.terms.items()})

    def __mul__(self, other: CliffordElement) -> CliffordElement:
        self._check(other)
        acc: dict[int, QuadScalar] = {}
        for s, cs in self.terms.items():
            for t, ct in other.terms.items():
                # sign from moving each generator of t past the larger generators of s
                rem = t
                swaps = 0
                while rem:
                    low = rem & -rem
                    swaps += (s >> low.bit_length()).bit_count()
                    rem ^= low
                coeff = cs * ct
                if swaps & 1:
                    coeff = -coeff
                m = s ^ t
                cur = acc.get(m)
                total = coeff if cur is None else cur + coeff
                if total.is_zero():
                    acc.pop(m, None)
                else:
                    acc[m] = total
        return CliffordElement(self.n, acc)

    def reverse(self) -> CliffordElement:
        """The anti-automorphism reversing products of generators."""
        out = {}
        for m, c in self.terms.items():
            k = m.bit_count()
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return CliffordElement(self.n, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CliffordElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0 or 1 if all masks share popcount parity, else None."""
        parities = {m.bit_count() & 1 for m in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def _check(self, other: CliffordElement) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "".join(f"e{i + 1}" for i in range(self.n) if m >> i & 1) or "1"
            bits.append(f"({c.a}+{c.b}r2)*{mono}")
        return " + ".join(bits)


def clifford_mul(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    """Exact product in the Clifford algebra (same as ``u * v``)."""
    return u * v


@dataclass(frozen=True)
class SpinElement:
    """A group element of the cover: exact Clifford element plus its image permutation."""

    elem: CliffordElement
    perm: Permutation

    def __mul__(self, other: SpinElement) -> SpinElement:
        return SpinElement(self.elem * other.elem, self.perm * other.perm)

    def inverse(self) -> SpinElement:
        # products of unit vectors invert by reversal
        return SpinElement(self.elem.reverse(), self.perm.inverse())

    def conj(self, other: SpinElement) -> SpinElement:
        """self |> other = self * other * self^-1."""
        return self * other * self.inverse()

    def times_z(self) -> SpinElement:
        return SpinElement(-self.elem, self.perm)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpinElement)
            and self.elem == other.elem
            and self.perm.image == other.perm.image
        )

    def __hash__(self):
        return hash((self.elem, self.perm.image))

    @staticmethod
    def one(n: int) -> SpinElement:
        return SpinElement(CliffordElement.one(n), Permutation.identity(n))

    @staticmethod
    def z(n: int) -> SpinElement:
        """The central involution, realized as the scalar -1."""
        return SpinElement(CliffordElement.scalar(n, -1), Permutation.identity(n))

    def is_group_like(self) -> bool:
        """Invariant check: parity-homogeneous and invertible via reversal."""
        if self.elem.parity() is None:
            return False
        return (self.elem * self.elem.reverse()) == CliffordElement.one(self.elem.n)

    def signed_action_consistent(self) -> bool:
        """Invariant check: conjugation sends each e_i to +/- e_{perm(i)}."""
        n = self.elem.n
        inv = self.elem.reverse()
        for i in range(1, n + 1):
            image = self.elem * CliffordElement.basis_vector(n, i) * inv
            target = 1 << (self.perm(i) - 1)
            if set(image.terms) != {target}:
                return False
            c = image.terms[target]
            if c != Q_ONE and c != Q_MINUS_ONE:
                return False
        return True


def generator_t(n: int, i: int) -> SpinElement:
    """The lifted Coxeter generator t_i = (e_i - e_{i+1})/sqrt(2) over s_i."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range 1..{n - 1}")
    elem = CliffordElement(
        n, {1 << (i - 1): Q_INV_SQRT2, 1 << i: -Q_INV_SQRT2}
    )
    return SpinElement(elem, Permutation.adjacent(n, i))


def _unnormalized_generator(n: int, i: int) -> SpinElement:
    """Deliberately corrupted generator (e_i - e_{i+1}); t_i^2 = 2 fails. Test hook."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range 1..{n - 1}")
    elem = CliffordElement(n, {1 << (i - 1): Q_ONE, 1 << i: Q_MINUS_ONE})
    return SpinElement(elem, Permutation.adjacent(n, i))


def verify_presentation(n: int, generator=generator_t, n_cap: int = DEFAULT_N_CAP) -> bool:
    """Check every defining relation of the cover exactly in the Clifford model.

    Relations: t_i^2 = 1, (t_j t_{j+1})^3 = 1, (t_k t_l)^2 = z for k <= l-2,
    z^2 = 1, and z central.
    """
    if not 2 <= n <= n_cap:
        raise ValueError(f"n must be in 2..{n_cap}, got {n}")
    one = SpinElement.one(n)
    z = SpinElement.z(n)
    ts = [generator(n, i) for i in range(1, n)]
    if (z * z) != one:
        return False
    for t in ts:
        if (z * t) != (t * z):
            return False
    for t in ts:
        if (t * t) != one:
            return False
    for j in range(n - 2):
        u = ts[j] * ts[j + 1]
        if (u * u * u) != one:
            return False
    for k in range(n - 1):
        for l in range(k + 2, n - 1):
            v = ts[k] * ts[l]
            if (v * v) != z:
                return False
    return True


def bracket(n: int, i: int, j: int) -> SpinElement:
    """The distinguished lift [i j] of the transposition (i j).

    [i, i+1] = t_i; for i+1 < j, [i j] = (t_i |> [i+1, j]) * z; and
    [j i] = [i j] * z for i < j.
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad bracket indices ({i}, {j}) for n={n}")
    if i > j:
        return bracket(n, j, i).times_z()
    if j == i + 1:
        return generator_t(n, i)
    return generator_t(n, i).conj(bracket(n, i + 1, j)).times_z()


def conj_by_perm(sigma: Permutation, t: SpinElement) -> SpinElement:
    """Conjugation of t by any lift of sigma; both lifts differ by the central z."""
    if sigma.n != t.perm.n:
        raise ValueError("size mismatch")
    lift = SpinElement.one(sigma.n)
    for i in sigma.lex_reduced_word():
        lift = lift * generator_t(sigma.n, i)
    return lift.conj(t)


def verify_conjugation_lemmas(n: int, trials: int = 1000, seed: int = 0) -> bool:
    """Exhaustively check s_k |> [i j] = [s_k(i) s_k(j)] z, then random-word conjugation.

    The random part conjugates [i j] by lifts of arbitrary generator words of
    length l <= 20 (not necessarily reduced) and checks the result is
    [w(i) w(j)] z^l, with z^l depending only on the parity of l.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    brackets = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b:
                brackets[(a, b)] = bracket(n, a, b)
    for k in range(1, n):
        sk = generator_t(n, k)
        swap = sk.perm
        for (a, b), br in brackets.items():
            expected = brackets[(swap(a), swap(b))].times_z()
            if sk.conj(br) != expected:
                return False
    rng = random.Random(seed)
    for _ in range(trials):
        l = rng.randint(0, 20)
        word = [rng.randint(1, n - 1) for _ in range(l)]
        lift = SpinElement.one(n)
        for i in word:
            lift = lift * generator_t(n, i)
        a = rng.randint(1, n)
        b = rng.randint(1, n - 1)
        if b >= a:
            b += 1
        got = lift.conj(brackets[(a, b)])
        expected = brackets[(lift.perm(a), lift.perm(b))]
        if l % 2 == 1:
            expected = expected.times_z()
        if got != expected:
            return False
    return True


class SectionCache:
    """Deterministic section s: S_n -> T_n with s(id) = 1 and s((i j)) = [i j].

    Non-transpositions lift along their lexicographically smallest reduced
    word, so the section (and hence the sign cocycle it defines) is
    reproducible.
    """

    def __init__(self, n: int):
        self.n = n
        self._memo: dict[tuple[int, ...], SpinElement] = {}

    def section(self, sigma: Permutation) -> SpinElement:
        if sigma.n != self.n:
            raise ValueError("size mismatch")
        cached = self._memo.get(sigma.image)
        if cached is not None:
            return cached
        pair = sigma.transposition_pair()
        if sigma.is_identity():
            s = SpinElement.one(self.n)
        elif pair is not None:
            s = bracket(self.n, pair[0], pair[1])
        else:
            s = SpinElement.one(self.n)
            for i in sigma.lex_reduced_word():
                s = s * generator_t(self.n, i)
        self._memo[sigma.image] = s
        return s

    def phi_bit(self, x: Permutation, y: Permutation) -> int:
        """The sign bit in s(x)s(y) = z^bit s(xy); raises if neither sign matches."""
        prod = self.section(x) * self.section(y)
        target = self.section(x * y)
        if prod.elem == target.elem:
            return 0
        if prod.elem == (-target.elem):
            return 1
        raise SectionConsistencyError(
            f"s(x)s(y) is not +/- s(xy) for x={x.cycle_string()}, y={y.cycle_string()}"
        )


def section_s(sigma: Permutation) -> SpinElement:
    """The section value s(sigma); see SectionCache for the defining choices."""
    return SectionCache(sigma.n).section(sigma)


def phi(x: Permutation, y: Permutation) -> int:
    """The sign bit of the section cocycle: s(x)s(y) = z^phi(x,y) s(xy)."""
    if x.n != y.n:
        raise ValueError("size mismatch")
    return SectionCache(x.n).phi_bit(x, y)


class GroupCocycleBit:
    """The Z/2-valued group 2-cocycle of the section, evaluated lazily with a memo."""

    def __init__(self, n: int):
        self.n = n
        self._cache = SectionCache(n)
        self._memo: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}

    def bit(self, x: Permutation, y: Permutation) -> int:
        key = (x.image, y.image)
        got = self._memo.get(key)
        if got is None:
            got = self._cache.phi_bit(x, y)
            self._memo[key] = got
        return got

    def scalar(self, x: Permutation, y: Permutation) -> int:
        """phi_psi(x, y) = (-1)^bit, the image under the sign character of <z>."""
        return -1 if self.bit(x, y) else 1

    def twist_table(self) -> TwistTable:
        """The restriction to transposition pairs, as an order-2 twist table."""
        rack = transposition_rack(self.n)
        perms = [Permutation.transposition(self.n, i, j) for i, j in transposition_pairs(self.n)]
        phi_tab = tuple(
            tuple(self.bit(sx, sy) for sy in perms) for sx in perms
        )
        return TwistTable(rack=rack, order=2, phi=phi_tab)


def phi_psi_table(n: int) -> GroupCocycleBit:
    """The sign-valued group cocycle attached to the section, for S_n with n >= 3."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return GroupCocycleBit(n)


def verify_group_cocycle(gc: GroupCocycleBit, n_cap: int = 5) -> bool:
    """Exhaustive check of bit(x,y)+bit(xy,z) == bit(x,yz)+bit(y,z) mod 2 over S_n.

    Materializes the full n! x n! bit table, so n is capped (n! triples grow
    as (n!)^3; n = 5 means 1.728M triples).
    """
    import itertools

    import numpy as np

    if gc.n > n_cap:
        raise ValueError(f"exhaustive group-cocycle check capped at n={n_cap}")
    perms = [Permutation(img) for img in itertools.permutations(range(1, gc.n + 1))]
    index = {p.image: i for i, p in enumerate(perms)}
    size = len(perms)
    mult = np.empty((size, size), dtype=np.int32)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            mult[a, b] = index[(pa * pb).image]
    bits = np.empty((size, size), dtype=np.int8)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            bits[a, b] = gc.bit(pa, pb)
    x = np.arange(size)[:, None, None]
    y = np.arange(size)[None, :, None]
    z = np.arange(size)[None, None, :]
    xy = mult[x, y]
    yz = mult[y, z]
    lhs = bits[x, y] + bits[xy, z]
    rhs = bits[x, yz] + bits[y, z]
    return bool(np.all((lhs - rhs) % 2 == 0))


def verify_main_theorem(n: int) -> tuple[bool, list[dict]]:
    """Check the twist identity pairwise on all ordered pairs of transpositions.

    For each pair (sigma, tau): (-1)^phi(sigma,tau) * (-1)^-phi(sigma|>tau,sigma)
    * chi(sigma,tau) must equal -1 exactly.  Returns overall verdict plus a
    per-pair log in deterministic order.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    from .cocycle import chi_cocycle

    gc = GroupCocycleBit(n)
    chi = chi_cocycle(n)
    pairs = transposition_pairs(n)
    perms = [Permutation.transposition(n, i, j) for i, j in pairs]
    log = []
    all_ok = True
    for a, sigma in enumerate(perms):
        for b, tau in enumerate(perms):
            conj = chi.rack.op[a][b]
            bit1 = gc.bit(sigma, tau)
            bit2 = gc.bit(perms[conj], sigma)
            chi_bit = chi.exp[a][b]
            ok = (bit1 - bit2 + chi_bit) % 2 == 1
            all_ok = all_ok and ok
            log.append(
                {
                    "sigma": str(pairs[a]),
                    "tau": str(pairs[b]),
                    "phi_bits": [bit1, bit2],
                    "chi_bit": chi_bit,
                    "ok": ok,
                }
            )
    return all_ok, log
