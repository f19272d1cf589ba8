"""Recursive descent parser for FLC source units."""
from typing import Callable, List, Optional, Tuple

from featurefinch.language.exceptions import DirectiveError, FlcSyntaxError
from featurefinch.language.features import (
    TRUE,
    FeatureExpr,
    Not,
    conjoin,
    parse_feature_expr,
)
from featurefinch.language.lexer import Token, TokenKind, tokenize
from featurefinch.language.syntax import (
    INTRINSICS,
    WIDTHS,
    Assert,
    Assign,
    Assume,
    BinaryOp,
    CallExpr,
    Conditional,
    DirectiveScope,
    Expr,
    ExprStmt,
    Fail,
    FunctionDef,
    GlobalDecl,
    If,
    Index,
    IntLit,
    MakeSymbolic,
    Name,
    Param,
    Return,
    SourceUnit,
    UnaryOp,
    VarDecl,
    While,
)

BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)


class Parser:
    """Parses one FLC source text.

    Attributes:
        path: File path recorded in the unit.
        tokens: Token stream of the source.
        position: Index of the next token.
        features: Declared feature names.
        scopes: Directive scopes collected while parsing.
    """

    def __init__(self, source: str, path: str) -> None:
        """Tokenize the source.

        Args:
            source: Source text.
            path: File path recorded in the unit.
        """
        self.path = path
        self.source = source
        self.tokens = tokenize(source)
        self.position = 0
        self.features: Tuple[str, ...] = ()
        self.scopes: List[DirectiveScope] = []

    # Token helpers

    def _peek(self, ahead: int = 0) -> Token:
        index = min(self.position + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def _take(self) -> Token:
        token = self._peek()
        self.position += 1
        return token

    def _error(self, message: str, token: Token = None) -> FlcSyntaxError:
        token = token or self._peek()
        if token.kind is TokenKind.DIRECTIVE:
            return DirectiveError(
                f"directive #{token.value} splits a statement",
                token.line,
                token.column,
            )
        return FlcSyntaxError(message, token.line, token.column)

    def _expect(self, value: str) -> Token:
        token = self._peek()
        if not token.is_op(value):
            raise self._error(
                f"expected {value!r}, got {token.value or token.kind.value!r}"
            )
        return self._take()

    def _expect_ident(self) -> Token:
        token = self._peek()
        if token.kind is not TokenKind.IDENT:
            raise self._error(
                f"expected identifier, got "
                f"{token.value or token.kind.value!r}"
            )
        return self._take()

    def _expect_number(self) -> int:
        negative = False
        if self._peek().is_op("-"):
            self._take()
            negative = True
        token = self._peek()
        if token.kind is not TokenKind.NUMBER:
            raise self._error("expected integer literal")
        self._take()
        value = int(token.value)
        return -value if negative else value

    def _at_type(self) -> bool:
        token = self._peek()
        return token.kind is TokenKind.KEYWORD and (
            token.value in WIDTHS or token.value == "void"
        )

    # Units

    def parse(self) -> SourceUnit:
        """Parse the whole source.

        Returns:
            SourceUnit: The parsed unit with its directive scopes.
        """
        if self._peek().is_op("features"):
            self.features = self._parse_features()

        items = self._parse_list(self._parse_top_item, TRUE, 0)
        token = self._peek()
        if token.kind is TokenKind.DIRECTIVE:
            raise DirectiveError(
                f"unbalanced directive at line {token.line}",
                token.line,
                token.column,
            )
        if token.kind is not TokenKind.EOF:
            raise self._error(f"unexpected {token.value!r}")

        return SourceUnit(
            path=self.path,
            features=self.features,
            items=tuple(items),
            scopes=tuple(self.scopes),
            line_count=len(self.source.splitlines()),
        )

    def _parse_features(self) -> Tuple[str, ...]:
        self._take()
        names = [self._expect_ident().value]
        while self._peek().is_op(","):
            self._take()
            names.append(self._expect_ident().value)
        self._expect(";")

        if len(set(names)) != len(names):
            raise self._error("duplicate feature declaration")
        return tuple(names)

    def _parse_list(
        self, parse_item: Callable[[], object], outer: FeatureExpr, depth: int
    ) -> List:
        """Parse items until a closing brace, EOF or `#else`/`#endif`.

        Args:
            parse_item: Parser of one item.
            outer: Presence condition of the enclosing branch.
            depth: Directive nesting depth of the list.

        Returns:
            list: Parsed items and directive blocks.
        """
        items = []
        while True:
            token = self._peek()
            if token.kind is TokenKind.EOF or token.is_op("}"):
                return items
            if token.kind is TokenKind.DIRECTIVE:
                if token.value in ("else", "endif"):
                    return items
                if token.value != "if":
                    raise DirectiveError(
                        f"unknown directive #{token.value}",
                        token.line,
                        token.column,
                    )
                items.append(self._parse_conditional(parse_item, outer, depth))
                continue
            items.append(parse_item())

    def _parse_conditional(
        self, parse_item: Callable[[], object], outer: FeatureExpr, depth: int
    ) -> Conditional:
        opener = self._take()
        condition = parse_feature_expr(
            opener.argument, set(self.features), opener.line
        )
        inside = conjoin([outer, condition])
        then = self._parse_list(parse_item, inside, depth + 1)

        orelse: List = []
        token = self._peek()
        then_end = token.line - 1
        if token.kind is TokenKind.DIRECTIVE and token.value == "else":
            self._check_bare(token)
            self._take()
            otherwise = conjoin([outer, Not(condition)])
            orelse = self._parse_list(parse_item, otherwise, depth + 1)
            closer = self._peek()
            if closer.kind is TokenKind.DIRECTIVE and closer.value == "endif":
                self.scopes.append(
                    DirectiveScope(
                        token.line + 1, closer.line - 1, otherwise, depth + 1
                    )
                )
            token = closer

        if not (token.kind is TokenKind.DIRECTIVE and token.value == "endif"):
            raise DirectiveError(
                f"unbalanced directive at line {opener.line}",
                opener.line,
                opener.column,
            )
        self._check_bare(token)
        self._take()

        self.scopes.append(
            DirectiveScope(opener.line + 1, then_end, inside, depth + 1)
        )
        self.scopes.sort(key=lambda scope: (scope.start, scope.depth))
        return Conditional(
            condition,
            tuple(then),
            tuple(orelse),
            line=opener.line,
            end_line=token.line,
        )

    @staticmethod
    def _check_bare(token: Token) -> None:
        if token.argument:
            raise DirectiveError(
                f"unexpected text after #{token.value}",
                token.line,
                token.column,
            )

    # Declarations

    def _parse_top_item(self):
        if not self._at_type():
            raise self._error("expected a declaration")
        type_token = self._take()
        name = self._expect_ident()

        if self._peek().is_op("("):
            return self._parse_function(type_token, name)

        if type_token.value == "void":
            raise self._error("variables cannot be void", type_token)
        size = self._parse_size()
        init = None
        if self._peek().is_op("="):
            self._take()
            init = self._expect_number()
        self._expect(";")
        return GlobalDecl(
            type_token.value, name.value, size, init, line=type_token.line
        )

    def _parse_size(self) -> Optional[int]:
        if not self._peek().is_op("["):
            return None
        self._take()
        size = self._expect_number()
        if size < 1:
            raise self._error("array size must be positive")
        self._expect("]")
        return size

    def _parse_function(self, type_token: Token, name: Token) -> FunctionDef:
        self._expect("(")
        params = []
        if not self._peek().is_op(")"):
            params.append(self._parse_param())
            while self._peek().is_op(","):
                self._take()
                params.append(self._parse_param())
        self._expect(")")
        body, closer = self._parse_block()
        return FunctionDef(
            type_token.value,
            name.value,
            tuple(params),
            body,
            line=type_token.line,
            end_line=closer.line,
        )

    def _parse_param(self) -> Param:
        token = self._peek()
        if not self._at_type() or token.value == "void":
            raise self._error("expected a parameter type")
        self._take()
        return Param(token.value, self._expect_ident().value, line=token.line)

    # Statements

    def _parse_block(self) -> Tuple[Tuple, Token]:
        self._expect("{")
        body = self._parse_list(self._parse_statement, TRUE, 0)
        token = self._peek()
        if token.kind is TokenKind.DIRECTIVE:
            raise DirectiveError(
                f"unbalanced directive at line {token.line}",
                token.line,
                token.column,
            )
        closer = self._expect("}")
        return tuple(body), closer

    def _parse_body(self) -> Tuple:
        if self._peek().is_op("{"):
            return self._parse_block()[0]
        return (self._parse_statement(),)

    def _parse_statement(self):
        token = self._peek()

        if self._at_type():
            return self._parse_var_decl()
        if token.is_op("if"):
            return self._parse_if()
        if token.is_op("while"):
            self._take()
            self._expect("(")
            cond = self._parse_expr()
            self._expect(")")
            return While(cond, self._parse_body(), line=token.line)
        if token.is_op("return"):
            self._take()
            value = None
            if not self._peek().is_op(";"):
                value = self._parse_expr()
            self._expect(";")
            return Return(value, line=token.line)
        if token.kind is TokenKind.IDENT:
            if self._peek(1).is_op("("):
                return self._parse_call_statement()
            return self._parse_assign()
        raise self._error(
            f"unexpected {token.value or token.kind.value!r}", token
        )

    def _parse_var_decl(self) -> VarDecl:
        type_token = self._take()
        if type_token.value == "void":
            raise self._error("variables cannot be void", type_token)
        name = self._expect_ident()
        size = self._parse_size()
        init = None
        if self._peek().is_op("="):
            if size is not None:
                raise self._error("arrays cannot have initializers")
            self._take()
            init = self._parse_expr()
        self._expect(";")
        return VarDecl(
            type_token.value, name.value, size, init, line=type_token.line
        )

    def _parse_if(self) -> If:
        token = self._take()
        self._expect("(")
        cond = self._parse_expr()
        self._expect(")")
        then = self._parse_body()
        orelse: Tuple = ()
        if self._peek().is_op("else"):
            self._take()
            if self._peek().is_op("if"):
                orelse = (self._parse_if(),)
            else:
                orelse = self._parse_body()
        return If(cond, then, orelse, line=token.line)

    def _parse_assign(self) -> Assign:
        name = self._take()
        target = Name(name.value, line=name.line)
        if self._peek().is_op("["):
            self._take()
            index = self._parse_expr()
            self._expect("]")
            target = Index(name.value, index, line=name.line)
        self._expect("=")
        value = self._parse_expr()
        self._expect(";")
        return Assign(target, value, line=name.line)

    def _parse_call_statement(self):
        name = self._take()
        self._check_callee(name)
        self._expect("(")

        if name.value == "make_symbolic":
            target = self._expect_ident().value
            lo = hi = None
            if self._peek().is_op(","):
                self._take()
                lo = self._expect_number()
                self._expect(",")
                hi = self._expect_number()
                if lo > hi:
                    raise self._error("empty make_symbolic range", name)
            self._expect(")")
            self._expect(";")
            return MakeSymbolic(target, lo, hi, line=name.line)

        if name.value in ("assume", "assert"):
            cond = self._parse_expr()
            self._expect(")")
            self._expect(";")
            node = Assume if name.value == "assume" else Assert
            return node(cond, line=name.line)

        if name.value == "fail":
            self._expect(")")
            spec_id = None
            if self._peek().is_op("@"):
                self._take()
                marker = self._expect_ident()
                if marker.value != "spec":
                    raise self._error("expected @spec", marker)
                self._expect("(")
                token = self._take()
                if token.kind not in (TokenKind.NUMBER, TokenKind.IDENT):
                    raise self._error("expected a spec id", token)
                spec_id = token.value
                self._expect(")")
            self._expect(";")
            return Fail(spec_id, line=name.line)

        call = self._parse_call_args(name)
        self._expect(";")
        return ExprStmt(call, line=name.line)

    @staticmethod
    def _check_callee(name: Token) -> None:
        if name.value.startswith("__"):
            raise FlcSyntaxError(
                f"unknown intrinsic {name.value!r}", name.line, name.column
            )

    def _parse_call_args(self, name: Token) -> CallExpr:
        args = []
        if not self._peek().is_op(")"):
            args.append(self._parse_expr())
            while self._peek().is_op(","):
                self._take()
                args.append(self._parse_expr())
        self._expect(")")
        return CallExpr(name.value, tuple(args), line=name.line)

    # Expressions

    def _parse_expr(self, level: int = 0) -> Expr:
        if level == len(BINARY_LEVELS):
            return self._parse_unary()

        left = self._parse_expr(level + 1)
        while True:
            token = self._peek()
            operators = BINARY_LEVELS[level]
            if token.kind is TokenKind.OP and token.value in operators:
                self._take()
                right = self._parse_expr(level + 1)
                left = BinaryOp(token.value, left, right, line=token.line)
            else:
                return left

    def _parse_unary(self) -> Expr:
        token = self._peek()
        if token.is_op("-") or token.is_op("!"):
            self._take()
            return UnaryOp(token.value, self._parse_unary(), line=token.line)
        return self._parse_primary()

    def _parse_primary(self) -> Expr:
        token = self._take()

        if token.kind is TokenKind.NUMBER:
            return IntLit(int(token.value), line=token.line)
        if token.is_op("("):
            expr = self._parse_expr()
            self._expect(")")
            return expr
        if token.kind is TokenKind.IDENT:
            if self._peek().is_op("("):
                self._check_callee(token)
                if token.value in INTRINSICS:
                    raise self._error(
                        f"intrinsic {token.value!r} used in an expression",
                        token,
                    )
                self._take()
                return self._parse_call_args(token)
            if self._peek().is_op("["):
                self._take()
                index = self._parse_expr()
                self._expect("]")
                return Index(token.value, index, line=token.line)
            return Name(token.value, line=token.line)

        raise self._error(
            f"expected an expression, got "
            f"{token.value or token.kind.value!r}",
            token,
        )


def parse_unit(source: str, path: str) -> SourceUnit:
    """Parse FLC source text into a source unit.

    Args:
        source: UTF-8 decoded source text.
        path: File path recorded in locations.

    Returns:
        SourceUnit: The parsed unit.

    Raises:
        FlcSyntaxError: On lexical or grammatical errors.
        DirectiveError: On unbalanced or malformed directives.
    """
    return Parser(source, path).parse()
