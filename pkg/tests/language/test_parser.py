from pytest import fixture, mark, raises

from featurefinch.language.exceptions import DirectiveError, FlcSyntaxError
from featurefinch.language.features import TRUE, Atom, Not
from featurefinch.language.lexer import TokenKind, tokenize
from featurefinch.language.parser import parse_unit
from featurefinch.language.printer import print_unit
from featurefinch.language.syntax import (
    BinaryOp,
    CallExpr,
    Conditional,
    Fail,
    FunctionDef,
    GlobalDecl,
    IntLit,
    MakeSymbolic,
    Name,
    UnaryOp,
)

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
    if (v == 2) {
        fail() @spec(s1);
    }
}
"""


@fixture
def unit():
    return parse_unit(SOURCE, "unit.flc")


def test_features_and_items(unit):
    assert unit.path == "unit.flc"
    assert unit.features == ("A", "B")
    assert unit.line_count == 23
    assert unit.items[0] == GlobalDecl("int", "g", None, 1)
    assert unit.items[1] == GlobalDecl("int8", "buf", 4, None)
    assert isinstance(unit.items[2], Conditional)
    assert [item.name for item in unit.items[3:]] == ["helper", "main"]


def test_function_lines(unit):
    main = unit.items[4]

    assert isinstance(main, FunctionDef)
    assert (main.line, main.end_line) == (12, 23)
    assert main.body[1] == MakeSymbolic("v", 0, 3)


def test_statement_directive(unit):
    block = unit.items[4].body[2]

    assert isinstance(block, Conditional)
    assert block.condition == Atom("A")
    assert len(block.then) == 1
    assert len(block.orelse) == 1
    assert (block.line, block.end_line) == (15, 19)


def test_fail_spec_id(unit):
    branch = unit.items[4].body[3]

    assert branch.cond == BinaryOp("==", Name("v"), IntLit(2))
    assert branch.then == (Fail("s1"),)


@mark.parametrize(
    "line,presence",
    [
        (2, TRUE),
        (5, Atom("A")),
        (9, TRUE),
        (16, Atom("A")),
        (18, Not(Atom("A"))),
    ],
)
def test_presence_of(unit, line, presence):
    assert unit.presence_of(line) == presence


def test_nested_presence():
    source = (
        "features A, B;\n"
        "#if A\n"
        "#if B\n"
        "int both;\n"
        "#endif\n"
        "int a;\n"
        "#endif\n"
    )

    unit = parse_unit(source, "nested.flc")

    assert str(unit.presence_of(4)) == "A && B"
    assert unit.presence_of(6) == Atom("A")


def test_expression_precedence():
    unit = parse_unit("int f() { return -1 + 2 * 3 == 5 || !0; }", "e")

    value = unit.items[0].body[0].value

    assert value == BinaryOp(
        "||",
        BinaryOp(
            "==",
            BinaryOp(
                "+",
                UnaryOp("-", IntLit(1)),
                BinaryOp("*", IntLit(2), IntLit(3)),
            ),
            IntLit(5),
        ),
        UnaryOp("!", IntLit(0)),
    )


def test_call_in_expression():
    unit = parse_unit("int f() { return g(1, x) + 2; }", "e")

    value = unit.items[0].body[0].value

    assert value.left == CallExpr("g", (IntLit(1), Name("x")))


def test_numeric_spec_id():
    unit = parse_unit("void main() { fail() @spec(12); }", "e")

    assert unit.items[0].body[0] == Fail("12")


def test_indented_directives():
    source = (
        "features A;\n"
        "void main() {\n"
        "    #if A\n"
        "    fail();\n"
        "    #endif\n"
        "}\n"
    )

    unit = parse_unit(source, "e")

    assert isinstance(unit.items[0].body[0], Conditional)


def test_print_round_trip(unit):
    reparsed = parse_unit(print_unit(unit), "unit.flc")

    assert reparsed.features == unit.features
    assert reparsed.items == unit.items


def test_tokenize():
    tokens = tokenize("int x = 10; // note\n#if A && B\n")

    kinds = [token.kind for token in tokens]
    assert kinds == [
        TokenKind.KEYWORD,
        TokenKind.IDENT,
        TokenKind.OP,
        TokenKind.NUMBER,
        TokenKind.OP,
        TokenKind.DIRECTIVE,
        TokenKind.EOF,
    ]
    assert tokens[5].value == "if"
    assert tokens[5].argument == "A && B"
    assert (tokens[3].line, tokens[3].column) == (1, 9)


@mark.parametrize(
    "source,error,message",
    [
        ("int x = $;", FlcSyntaxError, "unexpected character '\\$'"),
        ("void x;", FlcSyntaxError, "variables cannot be void"),
        ("features A, A;", FlcSyntaxError, "duplicate feature"),
        ("int f() { __builtin(); }", FlcSyntaxError, "unknown intrinsic"),
        (
            "int f() { return fail(); }",
            FlcSyntaxError,
            "used in an expression",
        ),
        ("void f() { make_symbolic(x, 3, 1); }", FlcSyntaxError, "empty"),
        ("void f() { fail() @other(1); }", FlcSyntaxError, "expected @spec"),
        ("features A;\n#if A\nint a;\n", DirectiveError, "unbalanced"),
        ("features A;\nint a;\n#endif\n", DirectiveError, "unbalanced"),
        (
            "features A;\n#ifdef A\n#endif\n",
            DirectiveError,
            "unknown directive",
        ),
        ("features A;\n#if C\n#endif\n", DirectiveError, "undeclared feature"),
        ("features A;\n#if A\n#endif A\n", DirectiveError, "unexpected text"),
        (
            "features A;\nvoid f() { g(1,\n#if A\n2); }\n#endif\n",
            DirectiveError,
            "splits a statement",
        ),
    ],
)
def test_syntax_errors(source, error, message):
    with raises(error, match=message):
        parse_unit(source, "bad.flc")


def test_syntax_error_location():
    with raises(FlcSyntaxError) as error:
        parse_unit("int f() {\n  return 1 +;\n}", "bad.flc")

    assert error.value.line == 2
    assert "line 2" in str(error.value)
