import re

import pytest

import config
from curves.curve_parser import parse_curve
from database.branch_curves import enumerate_rational_branch_curves, rational_branch_quartics
from database.curve_database import CurveDatabase, CurveInput, db_build, db_query, validate
from database.curve_record import CurveRecord
from errors import MalformedInputError
from invariants.weighted_point import WeightedPoint
from tests.factories import make_record

LABEL = re.compile(r"^\d+\.\d+e\d+(_\d+e\d+)*\.\d+$")


@pytest.fixture
def db():
    return CurveDatabase(
        [
            make_record(label="a", bad=(3,), point=("1", "0", "1"), twist_key="qbar:1,0,1"),
            make_record(label="b", point=("0", "1", "0"), twist_key="qbar:0,1,0"),
            make_record("special", label="c", point=("0", "0", "1"), twist_key="special:g"),
        ]
    )


@pytest.fixture(scope="module")
def built():
    inputs = [
        CurveInput(parse_curve("y^3 = x^4 + x^2 + 1"), conductor_exponents={2: None, 3: None}),
        parse_curve("y^3 = 16*x^4 + 4*x^2 + 1"),
        parse_curve("y^3 = x^4 - 1"),
        parse_curve("x^4 = y^3 + 1"),
    ]
    return db_build(inputs)


def labels(records) -> list[str]:
    return [r.label for r in records]


# --- records ---


def test_record_fields_follow_line_layout():
    assert list(CurveRecord.model_fields) == config.RECORD_FIELDS


def test_record_line_is_stable():
    record = make_record(exponents={2: 6, 3: None}, type3="loops").with_conductor_check()
    line = record.to_line()
    restored = CurveRecord.from_line(line)
    assert restored == record
    assert restored.to_line() == line
    assert restored.known_conductor_exponents == {2: 6}


# --- index and queries ---


def test_index_columns(db):
    assert list(db.index.columns) == config.INDEX_COLUMNS
    assert list(db.index["q_key"]) == ["Q:1,0,1", "Q:0,1,0", "special:g"]
    assert len(db) == 3


def test_query_by_bad_primes(db):
    assert labels(db.query_bad_primes([3])) == ["a"]
    assert labels(db_query(db, {2, 3})) == ["a", "b", "c"]
    assert db_query(db, frozenset({5})) == []


def test_query_by_weighted_point(db):
    assert labels(db_query(db, WeightedPoint(1, 0, 1))) == ["a"]
    # (2^6, 0, 2^12) is the same point after rescaling
    assert labels(db_query(db, WeightedPoint(64, 0, 4096))) == ["a"]
    with pytest.raises(MalformedInputError):
        db_query(db, WeightedPoint(0, 0, 1))


def test_query_by_qbar_class(db):
    assert labels(db_query(db, (0, 1, 0))) == ["b"]
    assert db.query_qbar_class((1, 1, 1)) == []


@pytest.mark.parametrize("key", [{1, 3}, {"3"}, "y^3 = x^4 - 1", (1, 2)])
def test_unsupported_query_keys(db, key):
    with pytest.raises(MalformedInputError):
        db_query(db, key)


# --- persistence ---


def test_save_and_load(db, tmp_path):
    path = tmp_path / "curves.pdb"
    db.save(path)
    assert path.read_text().splitlines() == [r.to_line() for r in db]
    loaded = CurveDatabase.load(path)
    assert loaded.records == db.records
    assert loaded.index.equals(db.index)


def test_load_skips_blank_lines_and_rejects_garbage(db, tmp_path):
    path = tmp_path / "curves.pdb"
    path.write_text(db.records[0].to_line() + "\n\n" + "{not a record\n")
    with pytest.raises(MalformedInputError, match=":3:"):
        CurveDatabase.load(path)


def test_missing_database(tmp_path):
    with pytest.raises(FileNotFoundError):
        CurveDatabase.load(tmp_path / "absent.pdb")


def test_write_failure_is_raised(db, tmp_path, mocker):
    mocker.patch("pathlib.Path.open", side_effect=OSError("disk full"))
    with pytest.raises(OSError):
        db.save(tmp_path / "curves.pdb")


# --- validation ---


def test_validation_reports_duplicates():
    record = make_record(label="x")
    problems = validate(CurveDatabase([record, record]))
    assert "Duplicate labels" in problems
    assert "Two nonspecial records share a Q-isomorphism key" in problems
    assert any("does not parse" in p for p in problems)


def test_validation_notices_stale_index(db):
    db.records.pop()
    assert "Index out of date" in validate(db)


# --- building ---


def test_empty_build():
    db = db_build([])
    assert len(db) == 0
    assert db.rejected == []
    assert list(db.index.columns) == config.INDEX_COLUMNS


@pytest.mark.slow
def test_build_keeps_one_record_per_class(built):
    assert len(built) == 2
    assert sorted(r.kind for r in built) == ["nonspecial", "special"]
    assert all(LABEL.match(r.label) for r in built)
    special = next(r for r in built if r.kind == "special")
    assert special.label == "2519424.2e7_3e9.1"
    assert special.bad_primes == [2, 3]


@pytest.mark.slow
def test_built_database_answers_queries(built):
    nonspecial = next(r for r in built if r.kind == "nonspecial")
    special = next(r for r in built if r.kind == "special")
    assert built.query_curve(parse_curve("y^3 = x^4 + x^2 + 1")) == [nonspecial]
    assert built.query_curve(parse_curve("y^3 = x^4 + 512*x")) == [special]
    assert built.query_twists(parse_curve("x^4 = y^3 + 1")) == [special]


@pytest.mark.slow
def test_built_database_validates(built, tmp_path):
    assert validate(built) == []
    path = tmp_path / "built.pdb"
    built.save(path)
    assert validate(CurveDatabase.load(path)) == []


# --- rational branch points ---


def test_branch_quartics_vanish_at_zero_and_one():
    quartics = rational_branch_quartics([2, 3], 2)
    assert quartics
    for q in quartics:
        assert q.coeffs[4] == 0
        assert sum(q.coeffs) == 0


def test_branch_curves_need_three():
    assert enumerate_rational_branch_curves([3], 4) == []
    with pytest.raises(ValueError):
        enumerate_rational_branch_curves([2, 5], 4)
