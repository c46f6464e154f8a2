import numpy as np
import pytest

from kerbundles.ample import (SplittingType, ample_criterion, line_splitting_sample, random_line,
                              section_profile, splitting_from_profile)


def test_criterion_examples():
    assert ample_criterion(2, 2, 4).verdict == "GeneralAmple"
    assert ample_criterion(2, 2, 4, 2).verdict == "GeneralAmple"
    v = ample_criterion(3, 3, 6)
    assert v.verdict == "Inconclusive" and v.codimension == 0
    with pytest.raises(ValueError):
        ample_criterion(3, 2, 6)


def test_splitting_type_basics():
    s = SplittingType((0, 3, 1))
    assert s.parts == (3, 1, 0) and s.degree == 4 and s.rank == 3
    assert not s.is_ample() and str(s) == "(3,1,0)"


class _StubSpec:
    """Explicit forms on P^1 for the dual map O^{r+t} -> O(1)^t."""

    def __init__(self, rows, prime=32003):
        self.rows, self.prime = rows, prime

    def form(self, tcopy, scopy, trial):
        return np.array(self.rows[tcopy[1]][scopy[1]], dtype=np.int64)


S, U, Z = (1, 0), (0, 1), (0, 0)


@pytest.mark.parametrize("rows,expect", [
    # coker of O(-1)^2 -> O^3 by columns (s,u,0), (0,s,u) is O(2); the zero column adds O
    ([[S, U, Z, Z], [Z, S, U, Z]], (2, 0)),
    ([[S, U, Z, Z], [Z, Z, S, U]], (1, 1)),
    ([[S, U, Z], [Z, S, U]], (2,)),
    ([[S, U, Z, Z, Z], [Z, Z, S, U, Z]], (1, 1, 0)),
])
def test_profile_against_explicit_splittings(rows, expect):
    t, rt = len(rows), len(rows[0])
    r = rt - t
    prof = section_profile(1, r, t, 1, _StubSpec(rows), (1, 0), (0, 1))
    assert splitting_from_profile(prof, r).parts == expect
    # h0(V(m)) = sum max(a + m + 1, 0)
    for m, h in prof.items():
        assert h == sum(max(a + m + 1, 0) for a in expect)


def test_random_line_is_a_line():
    lam, mu = random_line(3, 5, 7)
    assert len(lam) == 4 and len(mu) == 4
    assert random_line(3, 5, 7) == (lam, mu)


def test_sampler_plane_case():
    sample = line_splitting_sample(2, 2, 4, seed=0, lines=100)
    assert len(sample.types) == 100
    assert all(s.degree == 4 and s.rank == 2 for s in sample.types)
    assert sample.min_degree >= 1
    assert sample.counts.get("(2,2)", 0) >= 90
    assert "does not certify" in sample.summary()


def test_sampler_invariants_and_trivial_case():
    for n, r, t, d in [(2, 2, 1, 1), (3, 3, 2, 1), (2, 3, 3, 1), (2, 2, 4, 2)]:
        sample = line_splitting_sample(n, r, t, seed=3, lines=15, d=d)
        for s, prof in zip(sample.types, sample.profiles):
            assert s.degree == d * t and s.rank == r and s.min_part >= 0
            ms = sorted(prof)
            first = [prof[b] - prof[a] for a, b in zip(ms, ms[1:])]
            assert all(x <= y for x, y in zip(first, first[1:]))
    triv = line_splitting_sample(2, 3, 0, lines=4)
    assert [s.parts for s in triv.types] == [(0, 0, 0)] * 4


def test_sampler_reports_non_ample_witness():
    # t < r: on a general line some part is zero
    sample = line_splitting_sample(2, 3, 1, seed=1, lines=5)
    assert sample.min_degree == 0 and sample.summary().startswith("non-ample witness")


def test_sampler_deterministic():
    a = line_splitting_sample(2, 2, 3, seed=9, lines=10)
    b = line_splitting_sample(2, 2, 3, seed=9, lines=10)
    assert a.to_dict() == b.to_dict() and a.lines == b.lines
