from pytest import fixture, raises

from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import ProductDef
from featurefinch.language.syntax import GlobalDecl
from featurefinch.modelx.annotation import (
    annotate_metadata_vars,
    metadata_name,
)
from featurefinch.modelx.exceptions import AnnotationError
from featurefinch.symex.engine import extract_feature_models
from featurefinch.symex.interpreter import run_concrete

SOURCE = """int g;
int check(int v) {
    if (v > 1) {
        return 1;
    }
    return 0;
}
void log_it() {
    g = 0;
}
void main() {
    int x;
    make_symbolic(x, 0, 3);
    log_it();
    if (check(x) == 1) {
        fail() @spec(s1);
    }
}
"""


def program_of(unit):
    return resolve_product(unit, ProductDef("base", frozenset()))


@fixture
def annotated():
    return annotate_metadata_vars(parse_unit(SOURCE, "unit.flc"))


def test_metadata_name():
    assert metadata_name("isEncrypted") == "isEncryptedRes"


def test_metadata_global_is_declared(annotated):
    first = annotated.items[0]

    assert isinstance(first, GlobalDecl)
    assert first.name == "checkRes"
    assert annotated.metadata_vars == frozenset({"checkRes"})


def test_void_functions_are_unchanged(annotated):
    plain = parse_unit(SOURCE, "unit.flc")
    log_it = [i for i in plain.items if getattr(i, "name", "") == "log_it"]

    assert log_it[0] in annotated.items


def test_return_values_reach_path_conditions(annotated):
    result = extract_feature_models(program_of(annotated))

    failure = {atom.text for atom in result.fail_paths[0].atoms}
    normal = {atom.text for atom in result.normal_paths[0].atoms}
    assert failure == {"(Lt 1 x)", "(Eq 1 checkRes)"}
    assert normal == {"(Le x 1)", "(Eq 0 checkRes)"}


def test_each_call_gets_an_instance():
    source = """int g;
int check(int v) {
    return v + 1;
}
void main() {
    int x;
    make_symbolic(x, 0, 3);
    g = check(x);
    g = check(g);
}
"""
    unit = annotate_metadata_vars(parse_unit(source, "unit.flc"))
    result = extract_feature_models(program_of(unit))

    atoms = {atom.text for atom in result.normal_paths[0].atoms}
    assert "(Eq (Add 1 x) checkRes)" in atoms
    assert any("checkRes_2" in atom for atom in atoms)


def test_behaviour_is_preserved(annotated):
    plain = program_of(parse_unit(SOURCE, "unit.flc"))
    program = program_of(annotated)

    for value in range(4):
        before = run_concrete(plain, [value])
        after = run_concrete(program, [value])
        assert after.status is before.status
        assert after.env["checkRes"] == int(value > 1)


def test_collision_is_rejected():
    source = """int checkRes;
int check() {
    return 1;
}
void main() {
    checkRes = check();
}
"""
    with raises(AnnotationError, match="checkRes"):
        annotate_metadata_vars(parse_unit(source, "unit.flc"))
