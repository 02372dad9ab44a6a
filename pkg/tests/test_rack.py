import json

import pytest

from racktwist.errors import OrbitTooLargeError
from racktwist.rack import (
    FiniteRack,
    Permutation,
    TranspositionLabel,
    check_rack_axioms,
    conjugacy_class_rack,
    is_indecomposable,
    load_rack,
    rack_from_dict,
    rack_to_dict,
    save_rack,
    transposition_pairs,
    transposition_rack,
)


def s_n_generators(n):
    return [Permutation.adjacent(n, i) for i in range(1, n)]


def trivial_rack(k):
    return FiniteRack(op=tuple(tuple(range(k)) for _ in range(k)))


class TestPermutation:
    def test_compose_and_inverse(self):
        p = Permutation((2, 3, 1))
        q = Permutation((1, 3, 2))
        assert (p * q).image == (2, 1, 3)
        assert (p * p.inverse()).is_identity()

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 3))

    def test_length_is_inversion_count(self):
        assert Permutation((3, 2, 1)).length() == 3
        assert Permutation.identity(5).length() == 0
        p = Permutation((2, 4, 1, 3))
        img = p.image
        brute = sum(
            1 for a in range(4) for b in range(a + 1, 4) if img[a] > img[b]
        )
        assert p.length() == brute == 3

    def test_lex_reduced_word_for_13(self):
        word = Permutation.transposition(3, 1, 3).lex_reduced_word()
        assert word == (1, 2, 1)

    def test_reduced_word_reconstructs(self):
        import random

        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(2, 7)
            img = list(range(1, n + 1))
            rng.shuffle(img)
            p = Permutation(tuple(img))
            word = p.lex_reduced_word()
            assert len(word) == p.length()
            acc = Permutation.identity(n)
            for i in word:
                acc = acc * Permutation.adjacent(n, i)
            assert acc.image == p.image

    def test_cycle_string(self):
        assert Permutation.identity(3).cycle_string() == "id"
        assert Permutation.transposition(4, 2, 4).cycle_string() == "(2 4)"


class TestTranspositionLabel:
    def test_orders_enforced(self):
        TranspositionLabel(1, 4)
        with pytest.raises(ValueError):
            TranspositionLabel(4, 1)
        with pytest.raises(ValueError):
            TranspositionLabel(0, 2)

    def test_rack_labels_come_from_pairs(self):
        from racktwist.rack import transposition_labels

        labels = transposition_labels(4)
        assert [(lab.i, lab.j) for lab in labels] == transposition_pairs(4)
        assert transposition_rack(4).labels == tuple(str(lab) for lab in labels)


class TestConjugacyClassRack:
    def test_s3_transpositions(self):
        r = conjugacy_class_rack(s_n_generators(3), Permutation.transposition(3, 1, 2))
        assert r.size == 3
        assert check_rack_axioms(r).ok

    def test_s3_conjugation_value(self):
        r = conjugacy_class_rack(s_n_generators(3), Permutation.transposition(3, 1, 2))
        idx = {lab: i for i, lab in enumerate(r.labels)}
        # (1 2) |> (1 3) = (1 2)(1 3)(1 2) = (2 3)
        assert r.op[idx["(1 2)"]][idx["(1 3)"]] == idx["(2 3)"]

    def test_s4_size(self):
        r = conjugacy_class_rack(s_n_generators(4), Permutation.transposition(4, 1, 2))
        assert r.size == 6

    def test_self_fixing_and_closure(self):
        r = conjugacy_class_rack(s_n_generators(4), Permutation.transposition(4, 1, 2))
        for x in range(r.size):
            assert r.op[x][x] == x
            for y in range(r.size):
                assert 0 <= r.op[x][y] < r.size

    def test_orbit_cap(self):
        with pytest.raises(OrbitTooLargeError):
            conjugacy_class_rack(
                s_n_generators(5), Permutation.transposition(5, 1, 2), cap=5
            )


class TestTranspositionRack:
    @pytest.mark.parametrize("n,size", [(2, 1), (3, 3), (4, 6), (5, 10)])
    def test_sizes(self, n, size):
        assert transposition_rack(n).size == size

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            transposition_rack(1)

    def test_disjoint_transpositions_commute(self):
        r = transposition_rack(4)
        pairs = transposition_pairs(4)
        i12, i34 = pairs.index((1, 2)), pairs.index((3, 4))
        assert r.op[i12][i34] == i34

    def test_axioms(self):
        for n in (2, 3, 4, 5):
            assert check_rack_axioms(transposition_rack(n)).ok

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_conjugacy_class_construction(self, n):
        direct = transposition_rack(n)
        orbit = conjugacy_class_rack(s_n_generators(n), Permutation.transposition(n, 1, 2))
        relabel = [orbit.labels.index(lab) for lab in direct.labels]
        for x in range(direct.size):
            for y in range(direct.size):
                assert relabel[direct.op[x][y]] == orbit.op[relabel[x]][relabel[y]]


class TestAxiomChecker:
    def test_constant_row_reported(self):
        bad = FiniteRack(op=((0, 0, 0), (0, 1, 2), (0, 1, 2)))
        report = check_rack_axioms(bad)
        assert not report.ok
        assert report.kind == "non-bijective-row"
        assert report.witness == (0,)

    def test_latin_square_violating_distributivity(self):
        # rows are bijections but the table is not self-distributive
        bad = FiniteRack(op=((1, 2, 0), (0, 1, 2), (0, 1, 2)))
        report = check_rack_axioms(bad)
        assert not report.ok
        assert report.kind == "not-self-distributive"
        # the report must name the lexicographically first violating triple
        first = next(
            (x, y, z)
            for x in range(3)
            for y in range(3)
            for z in range(3)
            if bad.op[x][bad.op[y][z]] != bad.op[bad.op[x][y]][bad.op[x][z]]
        )
        assert report.witness == first


class TestIndecomposability:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_transposition_racks_connected(self, n):
        assert is_indecomposable(transposition_rack(n))

    def test_trivial_rack_disconnected(self):
        assert not is_indecomposable(trivial_rack(2))

    def test_singleton(self):
        assert is_indecomposable(trivial_rack(1))

    def test_matches_networkx(self):
        import networkx as nx

        for r in (transposition_rack(4), trivial_rack(3)):
            g = nx.Graph()
            g.add_nodes_from(range(r.size))
            for x in range(r.size):
                for y in range(r.size):
                    g.add_edge(y, r.op[x][y])
            assert is_indecomposable(r) == nx.is_connected(g)


class TestRackJson:
    def test_round_trip(self, tmp_path):
        r = transposition_rack(4)
        path = tmp_path / "rack.json"
        save_rack(r, str(path))
        loaded = load_rack(str(path))
        assert loaded.op == r.op
        assert loaded.labels == r.labels
        raw = json.loads(path.read_text())
        assert set(raw) == {"size", "op", "labels"}
        assert raw["size"] == 6

    def test_size_mismatch_rejected(self):
        d = rack_to_dict(transposition_rack(3))
        d["size"] = 5
        with pytest.raises(ValueError):
            rack_from_dict(d)
