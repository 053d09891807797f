import os
from pathlib import Path

import pytest

import knotfert

ROOT = Path(__file__).resolve().parents[2]
TABLE = os.environ.get("KNOTFERT_TABLE", str(ROOT / "data" / "knots9.tbl"))


@pytest.fixture(scope="module")
def table():
    return knotfert.Table(TABLE)


def test_shadow_and_enumeration():
    s = knotfert.Shadow("a b c a b c")
    assert s.crossings == 3
    assert s.stats() == {"c": 3, "s": 2, "g": 1}
    assert not knotfert.is_realizable([0, 1, 2, 0, 2, 1])
    counts = [len(knotfert.enumerate_shadows(n)) for n in range(6)]
    assert counts == [1, 1, 2, 6, 21, 99]
    irreducible = knotfert.enumerate_shadows(3, allow_reducible=False)
    assert [str(x.canonical_form()) for x in irreducible] == [s.canonical_form()]


def test_errors_carry_kind():
    with pytest.raises(knotfert.KnotfertError) as info:
        knotfert.Shadow("a b c a c b")
    assert info.value.kind == "NotRealizable"


def test_diagram_and_homfly():
    d = knotfert.Shadow("a b c a b c").diagram(0b101)
    assert d.stats()["w"] == 3
    assert d.homfly() == "2*v^2 - v^4 + v^2*z^2"
    assert d.mirror().stats()["w"] == -3
    assert knotfert.Diagram(d.code()) == d
    assert knotfert.Diagram("|").homfly() == "1"


def test_identify(table, ):
    fig8 = knotfert.Diagram("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]")
    assert table.identify(fig8) == ["4_1"]
    assert len(table) == 85
    report = table.identify_report(fig8, "fig8")
    assert report["matches"] == ["4_1"]


def test_fertility(table):
    f = knotfert.Fertility(table, threads=2)
    assert f.is_fertile("3_1")["verdict"] is True
    r = f.is_fertile("5_1")
    assert r["verdict"] is False and r["obstruction"]
    assert f.fertility_number("4_1")["value"] == 4
    assert f.is_mn_fertile("5_2", 6, 6)["verdict"] is True
    v = f.variation("6_2")
    assert v["scv"] == 0
    with pytest.raises(knotfert.KnotfertError):
        f.is_fertile("99_9")
