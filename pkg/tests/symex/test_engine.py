from pytest import fixture, mark, raises

from featurefinch.config.settings import EngineConfig
from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import ProductDef
from featurefinch.symex.engine import (
    SymbolicEngine,
    Worklist,
    extract_feature_models,
)
from featurefinch.symex.exceptions import EngineError
from featurefinch.symex.state import PathState, Status

HELPER_SOURCE = """int g;
int helper() {
    return g;
}
void main() {
    int x;
    make_symbolic(x, 0, 3);
    g = x;
    if (helper() == 2) {
        fail() @spec(s1);
    }
}
"""


def program_of(source, loop_bound=8):
    unit = parse_unit(source, "unit.flc")
    return resolve_product(unit, ProductDef("base", frozenset()), loop_bound)


def texts(outcome):
    return [atom.text for atom in outcome.atoms]


def pair_lines(pairs):
    return [(p.object, p.src_loc.line, p.dst_loc.line) for p in pairs]


@fixture
def result():
    return SymbolicEngine().extract_feature_models(program_of(HELPER_SOURCE))


def test_failure_path(result):
    assert len(result.fail_paths) == 1
    failure = result.fail_paths[0]

    assert failure.status is Status.FAILURE
    assert failure.spec_id == "s1"
    assert texts(failure) == ["(Eq 2 x)"]
    assert failure.sequences == [(("main", 0),)]
    assert "specification violated" in failure.diagnostic


def test_normal_path(result):
    assert len(result.normal_paths) == 1
    normal = result.normal_paths[0]

    assert normal.status is Status.NORMAL
    assert normal.spec_id is None
    assert texts(normal) == ["(Ne 2 x)"]
    assert normal.sequences == [
        (("main", 0), ("helper", 9)),
        (("main", 0),),
    ]


def test_store_load_pair_across_functions(result):
    assert pair_lines(result.sl_pairs) == [("g", 8, 3)]
    assert result.sl_pairs[0].src_function == "main"
    assert result.sl_pairs[0].dst_function == "helper"
    assert result.ss_pairs == []


def test_result_counts(result):
    assert result.product == "base"
    assert result.exhausted == 0
    assert result.terminated == 2
    assert not result.truncated
    assert result.steps > 0


def test_longest_limit():
    config = EngineConfig(longest=1)
    result = extract_feature_models(program_of(HELPER_SOURCE), config)

    assert result.normal_paths[0].sequences == [
        (("main", 0), ("helper", 9))
    ]


@mark.parametrize("search", ["dfs", "bfs"])
def test_search_order_finds_same_paths(search):
    result = extract_feature_models(
        program_of(HELPER_SOURCE), EngineConfig(search=search)
    )

    assert len(result.normal_paths) == 1
    assert len(result.fail_paths) == 1
    assert pair_lines(result.sl_pairs) == [("g", 8, 3)]


def test_path_budget_truncates():
    config = EngineConfig(max_paths=1)
    result = extract_feature_models(program_of(HELPER_SOURCE), config)

    assert result.truncated
    assert result.terminated == 1


def test_infeasible_program_raises():
    source = """void main() {
    int x;
    make_symbolic(x, 0, 3);
    assume(x > 5);
}
"""
    with raises(EngineError, match="no feasible path"):
        extract_feature_models(program_of(source))


def test_assertion_failure():
    source = """void main() {
    int x;
    make_symbolic(x, 0, 3);
    assert(x != 1);
}
"""
    result = extract_feature_models(program_of(source))

    assert [texts(p) for p in result.normal_paths] == [["(Ne 1 x)"]]
    assert [texts(p) for p in result.fail_paths] == [["(Eq 1 x)"]]
    assert "assertion failed" in result.fail_paths[0].diagnostic
    assert result.fail_paths[0].spec_id is None


def test_division_by_zero_forks():
    source = """int g;
void main() {
    int x;
    make_symbolic(x, 0, 3);
    g = 12 / x;
}
"""
    result = extract_feature_models(program_of(source))

    assert [texts(p) for p in result.normal_paths] == [["(Ne 0 x)"]]
    assert [texts(p) for p in result.fail_paths] == [["(Eq 0 x)"]]
    assert "division by zero" in result.fail_paths[0].diagnostic


def test_loop_bound_exhaustion():
    source = """void main() {
    int x;
    make_symbolic(x, 0, 3);
    while (x < 5) {
        x = x + 1;
    }
}
"""
    result = extract_feature_models(program_of(source, loop_bound=2))

    assert result.exhausted == 1
    assert len(result.normal_paths) == 1
    assert result.fail_paths == []


def test_locals_reset_between_calls():
    source = """int g;
void helper() {
    int l = 1;
    g = l;
}
void main() {
    helper();
    helper();
}
"""
    result = extract_feature_models(program_of(source))

    assert pair_lines(result.ss_pairs) == [("g", 4, 4)]
    assert pair_lines(result.sl_pairs) == [("helper::l", 3, 4)]


ARRAY_SOURCE = """int buf[2];
int g;
void main() {
    buf[0] = 1;
    buf[1] = 2;
    g = buf[0];
}
"""


def test_base_address_keys():
    config = EngineConfig(store_key_mode="base-address")
    result = extract_feature_models(program_of(ARRAY_SOURCE), config)

    assert pair_lines(result.ss_pairs) == [("buf", 4, 5)]
    assert pair_lines(result.sl_pairs) == [("buf", 5, 6)]


def test_object_offset_keys():
    config = EngineConfig(store_key_mode="object-offset")
    result = extract_feature_models(program_of(ARRAY_SOURCE), config)

    assert result.ss_pairs == []
    assert pair_lines(result.sl_pairs) == [("buf", 4, 6)]


def test_symbolic_index_forks_over_offsets():
    source = """int buf[2];
void main() {
    int x;
    make_symbolic(x, 0, 3);
    buf[x] = 1;
}
"""
    result = extract_feature_models(program_of(source))

    assert sorted(texts(p)[0] for p in result.normal_paths) == [
        "(Eq 0 x)",
        "(Eq 1 x)",
    ]
    assert len(result.fail_paths) == 1
    assert "out-of-bounds" in result.fail_paths[0].diagnostic


@mark.parametrize(
    "search, order", [("dfs", [2, 0, 1]), ("bfs", [0, 1, 2])]
)
def test_worklist_order(search, order):
    worklist = Worklist(search)
    worklist.extend([PathState(id=0), PathState(id=1)])
    worklist.extend([PathState(id=2)])

    popped = [worklist.pop().id for _ in range(len(worklist))]

    assert popped == order
