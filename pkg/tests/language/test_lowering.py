from pytest import fixture, mark, raises

from featurefinch.language.exceptions import ProductError, ResolveError
from featurefinch.language.features import TRUE, Atom
from featurefinch.language.ir import Const, InstKind, width_range, wrap
from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import ProductDef

SOURCE = """features A, B;
int g = 1;
int8 buf[4];
#if A
int a_only;
#endif

int helper(int x) {
    return x + 1;
}

void main() {
    int v;
    make_symbolic(v, 0, 3);
#if A
    a_only = helper(v);
#else
    g = 2;
#endif
    while (v < 2) {
        v = v + 1;
    }
}
"""


def product(*features):
    return ProductDef("_".join(features) or "base", frozenset(features))


@fixture
def unit():
    return parse_unit(SOURCE, "unit.flc")


def kinds(function):
    return [inst.kind for inst in function.body]


def test_globals_follow_product(unit):
    with_a = resolve_product(unit, product("A"))
    without = resolve_product(unit, product())

    assert [decl.name for decl in with_a.globals] == ["g", "buf", "a_only"]
    assert [decl.name for decl in without.globals] == ["g", "buf"]
    assert with_a.objects["buf"].count == 4
    assert with_a.objects["buf"].width == 8
    assert with_a.objects["g"].init == (1,)


def test_locals_are_scoped(unit):
    program = resolve_product(unit, product())

    assert program.functions["helper"].params == ("helper::x",)
    assert program.objects["main::v"].scope == "main"
    assert program.entry == "main"


def test_guarded_call_carries_presence(unit):
    program = resolve_product(unit, product("A"))

    calls = [
        inst
        for inst in program.functions["main"].body
        if inst.kind is InstKind.CALL
    ]

    assert len(calls) == 1
    assert calls[0].callee == "helper"
    assert calls[0].presence == Atom("A")
    assert calls[0].loc.line == 16


def test_else_branch_selected(unit):
    program = resolve_product(unit, product("B"))

    stores = [
        inst
        for inst in program.functions["main"].body
        if inst.kind is InstKind.STORE and inst.obj == "g"
    ]

    assert len(stores) == 1
    assert stores[0].operands[1] == Const(2)
    assert str(stores[0].presence) == "!A"


def test_make_symbolic_bounds(unit):
    program = resolve_product(unit, product())

    first = program.functions["main"].body[0]

    assert first.kind is InstKind.MAKE_SYMBOLIC
    assert first.obj == "main::v"
    assert first.operands == (Const(0), Const(3))
    assert first.presence == TRUE


@mark.parametrize("bound", [1, 3])
def test_loop_unrolling(unit, bound):
    program = resolve_product(unit, product(), loop_bound=bound)

    body = program.functions["main"].body
    branches = [inst for inst in body if inst.kind is InstKind.BRANCH]
    halts = [inst for inst in body if inst.kind is InstKind.HALT]

    assert len(branches) == bound + 1
    assert len(halts) == 1


def test_functions_end_with_return(unit):
    program = resolve_product(unit, product("A"))

    for function in program.functions.values():
        assert function.body[-1].kind is InstKind.RETURN
    assert program.functions["helper"].returns_value
    assert not program.functions["main"].returns_value


def test_uids_and_function(unit):
    program = resolve_product(unit, product())

    for function in program.functions.values():
        for index, inst in enumerate(function.body):
            assert inst.uid == f"{function.name}:{index}"
            assert inst.function == function.name


def test_branch_targets_in_range(unit):
    program = resolve_product(unit, product("A"), loop_bound=2)

    for function in program.functions.values():
        for inst in function.body:
            if inst.kind is InstKind.BRANCH:
                assert all(0 <= t <= len(function.body) for t in inst.targets)


def test_division_gets_own_temporary():
    unit = parse_unit(
        "int main() { int a; make_symbolic(a); return 10 / a; }", "d"
    )

    program = resolve_product(unit, product())
    body = program.functions["main"].body

    assigns = [inst for inst in body if inst.kind is InstKind.ASSIGN]
    assert len(assigns) == 1
    assert assigns[0].operands[0].op == "/"


def test_dangling_callsite():
    source = (
        "features A;\n"
        "#if A\n"
        "void f() { return; }\n"
        "#endif\n"
        "void main() { f(); }\n"
    )
    unit = parse_unit(source, "d.flc")

    with raises(ResolveError, match="dangling callsite to 'f' at line 5"):
        resolve_product(unit, product())
    assert resolve_product(unit, product("A")).functions["f"]


@mark.parametrize(
    "source,message",
    [
        ("void f() { return; }", "entry function 'main' missing"),
        ("void main() { main(); }", "recursive call cycle: main -> main"),
        ("void main() { x = 1; }", "undeclared variable 'x'"),
        ("void main() { g(); }", "undeclared function 'g'"),
        ("int f(int a) { return a; }\nvoid main() { f(); }", "takes 1"),
        ("void f() { return; }\nvoid main() { int a = f(); }", "no value"),
        ("void main() { return 1; }", "returns a value"),
        ("int8 c;\nvoid main() { make_symbolic(c, 0, 300); }", "exceeds"),
        ("int a[2];\nvoid main() { a = 1; }", "needs an index"),
        ("int a;\nvoid main() { a[0] = 1; }", "is not an array"),
        ("void main() { int a; int a; }", "duplicate local 'a'"),
        ("int g;\nint g;\nvoid main() { return; }", "duplicate global"),
    ],
)
def test_resolve_errors(source, message):
    unit = parse_unit(source, "bad.flc")

    with raises(ResolveError, match=message):
        resolve_product(unit, product())


def test_resolve_error_names_location():
    unit = parse_unit("void main() {\n  x = 1;\n}", "bad.flc")

    with raises(ResolveError, match="at line 2 of bad.flc"):
        resolve_product(unit, product())


def test_undeclared_product_feature(unit):
    with raises(ProductError, match="enables undeclared features C"):
        resolve_product(unit, product("C"))


def test_loop_bound_must_be_positive(unit):
    with raises(ResolveError, match="loop bound must be positive"):
        resolve_product(unit, product(), loop_bound=0)


@mark.parametrize(
    "value,bits,expected",
    [(127, 8, 127), (128, 8, -128), (-129, 8, 127), (2 ** 31, 32, -(2 ** 31))],
)
def test_wrap(value, bits, expected):
    assert wrap(value, bits) == expected


def test_width_range():
    assert width_range(8) == (-128, 127)
    assert width_range(16) == (-32768, 32767)
