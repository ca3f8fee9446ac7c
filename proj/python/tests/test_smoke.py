from fractions import Fraction

import pytest

import vgit

W012 = [[0], [1], [2]]


def test_classify_running_example():
    r = vgit.classify(W012, [1], 2, {0: 1, 1: 1, 2: 1})
    assert r["class"] == "Stable"
    assert r["M"] == {"sign": -1, "sq": Fraction(1, 4)}

    r = vgit.classify(W012, [Fraction(1, 2)], 1, {2: 1})
    assert r["class"] == "Unstable"
    assert r["beta"] == [Fraction(3, 2)]


def test_chambers_and_cells():
    ch = vgit.chambers(W012)
    assert [c["witness"] for c in ch] == [[Fraction(1, 2)], [Fraction(3, 2)]]
    assert len(vgit.cells(W012)) == 5
    assert sum(not w["boundary"] for w in vgit.walls(W012)) == 1


def test_cross_wall():
    x = vgit.cross_wall(W012, ["1"])
    c = x["components"][0]
    assert (c["d_plus"], c["d_minus"], c["codim"]) == (0, 0, 1)


def test_errors():
    with pytest.raises(vgit.DomainError, match="IsChamber"):
        vgit.cross_wall(W012, [Fraction(1, 2)])
    with pytest.raises(vgit.InputError):
        vgit.classify(W012, [1, 2], 1, {0: 1})


def test_point_configurations():
    k = [1, 1, 1, 1]
    line = lambda ts: [[1, t] for t in ts]
    assert vgit.config_stability(1, line([0, 1, 2, 3]), k) == "Stable"
    assert vgit.config_stability(1, line([0, 0, 2, 3]), k) == "StrictlySemistable"
    assert vgit.classify_via_pluecker(1, line([0, 0, 0, 3]), k) == "Unstable"
    assert not vgit.nonempty_ss([3, 1, 1], 1)
    assert len(vgit.config_walls(1, 4)) == 3
    assert vgit.gm_check(1, 4)["match"]


def test_plot():
    svg = vgit.plot_svg(W012)
    assert svg.count('class="wall interior"') == 1
    assert svg.startswith("<?xml")
