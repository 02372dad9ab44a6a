"""Finite racks as explicit operation tables.

A rack is a finite set {0..k-1} with a binary operation x |> y such that
every left translation y -> x |> y is a bijection and the operation is
self-distributive: x |> (y |> z) = (x |> y) |> (x |> z).  The racks built
here come from conjugation in symmetric groups; elements are dense integer
indices and any group-theoretic meaning lives in the labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import OrbitTooLargeError

ORBIT_CAP = 10_000


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation: image[k] = value at position k+1."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, i: int, j: int) -> Permutation:
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise ValueError(f"bad transposition ({i} {j}) in S_{n}")
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return Permutation(tuple(img))

    @staticmethod
    def adjacent(n: int, i: int) -> Permutation:
        """The Coxeter generator swapping i and i+1."""
        return Permutation.transposition(n, i, i + 1)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Functional composition: (self*other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.image[v - 1] for v in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for pos, v in enumerate(self.image):
            inv[v - 1] = pos + 1
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.image))

    def length(self) -> int:
        """Coxeter length = number of inversions of the one-line notation."""
        img = self.image
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if img[a] > img[b])

    def transposition_pair(self) -> tuple[int, int] | None:
        """The moved pair (i, j), i < j, if this is a transposition, else None."""
        moved = [i + 1 for i, v in enumerate(self.image) if v != i + 1]
        if len(moved) == 2 and self(moved[0]) == moved[1] and self(moved[1]) == moved[0]:
            return moved[0], moved[1]
        return None

    def left_descents(self) -> list[int]:
        """Generators i with length(s_i * self) < length(self)."""
        inv = self.inverse().image
        return [i for i in range(1, self.n) if inv[i - 1] > inv[i]]

    def lex_reduced_word(self) -> tuple[int, ...]:
        """The lexicographically smallest reduced word, by greedy smallest left descent."""
        word = []
        cur = self
        while True:
            ds = cur.left_descents()
            if not ds:
                break
            i = ds[0]
            word.append(i)
            cur = Permutation.adjacent(cur.n, i) * cur
        return tuple(word)

    def cycle_string(self) -> str:
        seen = [False] * self.n
        parts = []
        for start in range(1, self.n + 1):
            if seen[start - 1] or self(start) == start:
                continue
            cyc = [start]
            seen[start - 1] = True
            v = self(start)
            while v != start:
                cyc.append(v)
                seen[v - 1] = True
                v = self(v)
            parts.append("(" + " ".join(str(c) for c in cyc) + ")")
        return "".join(parts) if parts else "id"


@dataclass(frozen=True)
class TranspositionLabel:
    """The pair (i, j) with 1 <= i < j <= n naming a transposition."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"({self.i} {self.j})"


@dataclass(frozen=True)
class FiniteRack:
    """A rack on {0..k-1} given by its full operation table op[x][y] = x |> y."""

    op: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        k = len(self.op)
        if any(len(row) != k for row in self.op):
            raise ValueError("operation table must be square")
        if self.labels is not None and len(self.labels) != k:
            raise ValueError("labels length must match rack size")

    @property
    def size(self) -> int:
        return len(self.op)

    def act(self, x: int, y: int) -> int:
        return self.op[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def inverse_act(self) -> tuple[tuple[int, ...], ...]:
        """Table of inverse left translations: result[x][u] = y with x |> y = u."""
        k = self.size
        inv = [[0] * k for _ in range(k)]
        for x in range(k):
            for y in range(k):
                inv[x][self.op[x][y]] = y
        return tuple(tuple(row) for row in inv)


@dataclass(frozen=True)
class RackAxiomReport:
    """Outcome of check_rack_axioms; witness pins the first violation found."""

    ok: bool
    kind: str | None = None  # "non-bijective-row" | "not-self-distributive"
    witness: tuple[int, ...] | None = None


def check_rack_axioms(r: FiniteRack) -> RackAxiomReport:
    """Check bijectivity of every left translation and self-distributivity.

    Scans rows first, then triples, both in lexicographic order, so the
    reported witness is deterministic.
    """
    k = r.size
    full = set(range(k))
    for x in range(k):
        if set(r.op[x]) != full:
            return RackAxiomReport(False, "non-bijective-row", (x,))
    for x in range(k):
        for y in range(k):
            for z in range(k):
                if r.op[x][r.op[y][z]] != r.op[r.op[x][y]][r.op[x][z]]:
                    return RackAxiomReport(False, "not-self-distributive", (x, y, z))
    return RackAxiomReport(True)


def is_indecomposable(r: FiniteRack) -> bool:
    """True iff the graph with edges {y, x |> y} over all x, y is connected."""
    k = r.size
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(k):
        for y in range(k):
            ra, rb = find(y), find(r.op[x][y])
            if ra != rb:
                parent[ra] = rb
    return len({find(a) for a in range(k)}) == 1


def conjugacy_class_rack(
    generators: list[Permutation], seed: Permutation, cap: int = ORBIT_CAP
) -> FiniteRack:
    """The rack on the conjugation orbit of ``seed`` under the group the generators generate.

    The operation is x |> y = x y x^-1.  Elements are ordered by one-line
    notation so the output is deterministic.
    """
    if any(g.n != seed.n for g in generators):
        raise ValueError("generator/seed size mismatch")
    orbit = {seed.image: seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = g * p * g.inverse()
                if q.image not in orbit:
                    if len(orbit) >= cap:
                        raise OrbitTooLargeError(f"orbit too large: exceeds cap {cap}")
                    orbit[q.image] = q
                    nxt.append(q)
        frontier = nxt
    elems = [orbit[key] for key in sorted(orbit)]
    index = {p.image: i for i, p in enumerate(elems)}
    op = tuple(
        tuple(index[(x * y * x.inverse()).image] for y in elems) for x in elems
    )
    return FiniteRack(op=op, labels=tuple(p.cycle_string() for p in elems))


def transposition_pairs(n: int) -> list[tuple[int, int]]:
    """All pairs (i, j), 1 <= i < j <= n, in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def transposition_labels(n: int) -> list[TranspositionLabel]:
    """The labels of transposition_rack(n), in element order."""
    return [TranspositionLabel(i, j) for i, j in transposition_pairs(n)]


def transposition_rack(n: int) -> FiniteRack:
    """The rack of transpositions of S_n under conjugation, size n(n-1)/2."""
    if n < 2:
        raise ValueError(f"transposition rack needs n >= 2, got {n}")
    pairs = transposition_pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    perms = [Permutation.transposition(n, i, j) for i, j in pairs]
    op = []
    for x in perms:
        row = []
        for (c, d) in pairs:
            a, b = x(c), x(d)
            row.append(index[(a, b) if a < b else (b, a)])
        op.append(tuple(row))
    return FiniteRack(op=tuple(op), labels=tuple(str(lab) for lab in transposition_labels(n)))


def rack_to_dict(r: FiniteRack) -> dict:
    d = {"size": r.size, "op": [list(row) for row in r.op]}
    if r.labels is not None:
        d["labels"] = list(r.labels)
    return d


def rack_from_dict(d: dict) -> FiniteRack:
    op = tuple(tuple(int(v) for v in row) for row in d["op"])
    labels = tuple(d["labels"]) if "labels" in d and d["labels"] is not None else None
    r = FiniteRack(op=op, labels=labels)
    if r.size != int(d["size"]):
        raise ValueError("size field disagrees with table")
    return r


def load_rack(path: str) -> FiniteRack:
    with open(path, encoding="utf-8") as fh:
        return rack_from_dict(json.load(fh))


def save_rack(r: FiniteRack, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rack_to_dict(r), fh, indent=2, sort_keys=True)
        fh.write("\n")
