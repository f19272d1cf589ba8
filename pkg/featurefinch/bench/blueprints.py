"""Blueprints of benchmark product lines and their FLC rendering.

A blueprint lists its features in pipeline order, the symbolic inputs
of the unit and the seeded interactions. Every feature becomes a group
of role functions compiled in under its own directive. Once the inputs
are symbolic, `main` runs the interaction phase of every role, then the
base `audit` function, then the step phase of every role. A step picks
one of up to three tiers from the role's input, which gives every
product many normal paths.

A store-load interaction stores into a shared slot in the source role.
The destination role loads the slot into a copy that `audit` compares
with the trigger. In a store-store interaction both roles store into
the slot and the source also sets a marker; `audit` fails when the
marker is set and the slot holds the trigger. Neither can fire unless
both features are enabled. An unguarded interaction has no `fail` and
only branches in the destination role.
"""
import random
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, List, NamedTuple, Tuple

from featurefinch.bench.exceptions import BlueprintError
from featurefinch.featloc.locators import ROLE_SEPARATOR
from featurefinch.language.features import FEATURE_NAME
from featurefinch.language.ir import width_range
from featurefinch.language.lexer import KEYWORDS
from featurefinch.language.products import ProductDef

SL = "SL"
SS = "SS"
KINDS = (SL, SS)

SLOT_TYPE = "int8"
AUDIT = "audit"
ROUTE = "route"
GRADE = "grade"
COLLIDES = "collides"
ESCALATE = "escalate"
RESERVED = frozenset({AUDIT, ROUTE, GRADE, COLLIDES, ESCALATE, "main"})
TIERS = ("low", "mid", "high")


class InputDomain(NamedTuple):
    """A symbolic input of a unit and its inclusive range."""

    name: str
    lo: int
    hi: int


@dataclass(frozen=True)
class FeatureRole:
    """A feature and the role function that implements it.

    Attributes:
        feature: Feature name.
        verb: Base name of the role functions.
        input: Input read by the role's helper.
    """

    feature: str
    verb: str
    input: str

    def function(self, suffix: str = "") -> str:
        """Name of a role function, e.g. `sign__role__Sign`."""
        return f"{self.verb}{suffix}{ROLE_SEPARATOR}{self.feature}"


@dataclass(frozen=True)
class Interaction:
    """A seeded feature interaction.

    Attributes:
        spec_id: Id of the `fail` that detects the interaction.
        source: Feature whose role stores into the slot first.
        dest: Feature whose role loads or overwrites the slot.
        kind: `SL` or `SS`.
        slot: Global shared by the two roles.
        input: Input the stored values are computed from.
        offset: Added to the input by the storing role.
        trigger: Slot value that makes the interaction fail.
        guarded: Whether a `fail` checks the interaction at all.
    """

    spec_id: str
    source: str
    dest: str
    kind: str
    slot: str
    input: str
    offset: int
    trigger: int
    guarded: bool = True

    @property
    def pair(self) -> FrozenSet[str]:
        """The two features that interact."""
        return frozenset((self.source, self.dest))

    @property
    def marker(self) -> str:
        """Global set by the source of a store-store interaction."""
        return f"{self.slot}_set"

    @property
    def seen(self) -> str:
        """Global the destination of a store-load copies the slot to."""
        return f"{self.slot}_seen"

    @property
    def shared(self) -> Tuple[str, ...]:
        """Globals the interaction adds to the unit."""
        if self.kind == SS:
            return (self.slot, self.marker)
        if self.guarded:
            return (self.slot, self.seen)
        return (self.slot,)


@dataclass(frozen=True)
class Blueprint:
    """Declarative description of a benchmark product line.

    Attributes:
        name: Suite name, also the stem of its files.
        description: One line describing the product line.
        inputs: Symbolic inputs made symbolic by `main`.
        roles: Features in pipeline order.
        interactions: Seeded interactions.
        padding: Straight-line statements added to every role.
    """

    name: str
    description: str
    inputs: Tuple[InputDomain, ...]
    roles: Tuple[FeatureRole, ...]
    interactions: Tuple[Interaction, ...]
    padding: int = 0

    @property
    def features(self) -> Tuple[str, ...]:
        """Feature names in pipeline order."""
        return tuple(role.feature for role in self.roles)

    def domain(self, name: str) -> InputDomain:
        """Find a declared input by name."""
        for domain in self.inputs:
            if domain.name == name:
                return domain
        raise BlueprintError(f"undeclared input {name!r} in {self.name}")

    def check(self) -> None:
        """Check names, pipeline order and the reachability of triggers.

        Raises:
            BlueprintError: If the blueprint cannot be rendered into a
                unit whose interactions fire only in combination.
        """
        if not self.roles or not self.inputs:
            raise BlueprintError(f"{self.name} needs features and inputs")
        if self.padding < 0:
            raise BlueprintError("padding must not be negative")

        names = [domain.name for domain in self.inputs]
        names += [role.verb for role in self.roles]
        for interaction in self.interactions:
            names += interaction.shared
        _check_identifiers(self.name, names)

        lo, hi = width_range(8)
        for domain in self.inputs:
            if not lo <= domain.lo <= domain.hi <= hi:
                raise BlueprintError(
                    f"input {domain.name!r} has an invalid range"
                )

        features = self.features
        for feature in features:
            if not FEATURE_NAME.match(feature) or feature in KEYWORDS:
                raise BlueprintError(f"invalid feature name {feature!r}")
        if len(set(features)) != len(features):
            raise BlueprintError(f"duplicate feature in {self.name}")
        for role in self.roles:
            self.domain(role.input)

        spec_ids = [i.spec_id for i in self.interactions]
        if len(set(spec_ids)) != len(spec_ids):
            raise BlueprintError(f"duplicate spec id in {self.name}")
        for interaction in self.interactions:
            self._check_interaction(interaction)

    def _check_interaction(self, interaction: Interaction) -> None:
        features = self.features
        spec = interaction.spec_id
        if not FEATURE_NAME.match(spec):
            raise BlueprintError(f"invalid spec id {spec!r}")
        if interaction.kind not in KINDS:
            raise BlueprintError(
                f"unsupported interaction kind {interaction.kind!r}"
            )
        for feature in (interaction.source, interaction.dest):
            if feature not in features:
                raise BlueprintError(
                    f"interaction {spec} names undeclared "
                    f"feature {feature!r}"
                )
        if features.index(interaction.source) >= features.index(
            interaction.dest
        ):
            raise BlueprintError(
                f"interaction {spec}: {interaction.source} must run "
                f"before {interaction.dest}"
            )

        domain = self.domain(interaction.input)
        low = domain.lo + interaction.offset
        high = domain.hi + interaction.offset
        if not width_range(8)[0] <= low <= high <= width_range(8)[1]:
            raise BlueprintError(f"interaction {spec} overflows its slot")
        if not low <= interaction.trigger <= high:
            raise BlueprintError(f"trigger of interaction {spec} unreachable")
        if interaction.trigger == 0:
            raise BlueprintError(
                f"trigger of interaction {spec} equals the initial value"
            )
        if interaction.kind == SS and low <= domain.hi + 1:
            raise BlueprintError(
                f"interaction {spec}: stored ranges of both roles overlap"
            )


def interaction_rows(table: str) -> Tuple[Interaction, ...]:
    """Read interactions from a whitespace separated table.

    Each non-blank row holds the spec id, source, destination, kind,
    slot, input, offset and trigger. A trailing `-` marks an
    interaction no `fail` checks.

    Args:
        table: The table text.

    Returns:
        tuple: The interactions in row order.

    Raises:
        BlueprintError: On a row with the wrong number of cells.
    """
    interactions = []
    for row in table.strip().splitlines():
        cells = row.split()
        if not cells:
            continue
        guarded = cells[-1] != "-"
        if not guarded:
            cells = cells[:-1]
        if len(cells) != 8:
            raise BlueprintError(f"malformed interaction row {row.strip()!r}")
        spec_id, source, dest, kind, slot, name = cells[:6]
        interactions.append(
            Interaction(
                spec_id,
                source,
                dest,
                kind,
                slot,
                name,
                int(cells[6]),
                int(cells[7]),
                guarded,
            )
        )
    return tuple(interactions)


def _check_identifiers(name: str, identifiers: List[str]) -> None:
    seen = set()
    for identifier in identifiers:
        if not FEATURE_NAME.match(identifier) or identifier in KEYWORDS:
            raise BlueprintError(f"invalid identifier {identifier!r}")
        if identifier.startswith("__") or ROLE_SEPARATOR in identifier:
            raise BlueprintError(f"reserved identifier {identifier!r}")
        if identifier in seen or identifier in RESERVED:
            raise BlueprintError(
                f"identifier {identifier!r} clashes in {name}"
            )
        seen.add(identifier)


def _block(header: str, body: Iterable[str]) -> List[str]:
    return [f"{header} {{", *(f"    {line}" for line in body), "}"]


def _if_else(
    condition: str, then: Iterable[str], orelse: Iterable[str]
) -> List[str]:
    return (
        [f"if ({condition}) {{"]
        + [f"    {line}" for line in then]
        + ["} else {"]
        + [f"    {line}" for line in orelse]
        + ["}"]
    )


def _cuts(domain: InputDomain, index: int) -> Tuple[int, ...]:
    """Thresholds splitting a domain into nonempty tiers.

    The position of the thresholds moves with the role index, so roles
    reading the same input branch at different values.
    """
    span = domain.hi - domain.lo
    if span < 2:
        return tuple(range(domain.lo + 1, domain.hi + 1))
    first = domain.lo + 1 + index % (span - 1)
    return (first, first + 1 + index % (domain.hi - first))


def _tiers(
    blueprint: Blueprint, role: FeatureRole
) -> Tuple[Tuple[int, ...], Tuple[str, ...]]:
    cuts = _cuts(blueprint.domain(role.input), blueprint.roles.index(role))
    return cuts, TIERS[: len(cuts)] + TIERS[-1:]


def _tier_choice(
    role: FeatureRole, cuts: Tuple[int, ...], tiers: Tuple[str, ...]
) -> List[str]:
    choice = [f"{role.function('_' + tiers[-1])}();"]
    for cut, tier in reversed(list(zip(cuts, tiers))):
        choice = _if_else(
            f"{GRADE}({role.input}, {cut}) == 0",
            [f"{role.function('_' + tier)}();"],
            choice,
        )
    return choice


def _interaction_body(
    blueprint: Blueprint, role: FeatureRole, first_tier: str
) -> List[str]:
    body: List[str] = []
    for interaction in blueprint.interactions:
        if interaction.source != role.feature:
            continue
        if interaction.kind == SL:
            body.append(
                f"{interaction.slot} = "
                f"{interaction.input} + {interaction.offset};"
            )
        else:
            body.append(f"{interaction.slot} = {interaction.input} + 1;")
            body.append(f"{interaction.marker} = 1;")

    for interaction in blueprint.interactions:
        if interaction.dest != role.feature:
            continue
        if interaction.kind == SS:
            body.append(
                f"{interaction.slot} = "
                f"{interaction.input} + {interaction.offset};"
            )
        elif interaction.guarded:
            body.append(f"{interaction.seen} = {interaction.slot};")
        else:
            body += _block(
                f"if ({interaction.slot} == {interaction.trigger})",
                [f"{first_tier}();"],
            )
    return body or ["return;"]


def _role_lines(blueprint: Blueprint, role: FeatureRole) -> List[str]:
    cuts, tiers = _tiers(blueprint, role)
    lines: List[str] = []
    for number, tier in enumerate(tiers):
        lines += _block(
            f"void {role.function('_' + tier)}()",
            [f"int level = {role.input} + {number + 1};"],
        ) + [""]

    step: List[str] = []
    if blueprint.padding:
        work = role.function("_work")
        lines += _block(
            f"void {work}()",
            [
                f"int w{k} = {role.input} + {k};"
                for k in range(blueprint.padding)
            ],
        ) + [""]
        step.append(f"{work}();")
    step += _tier_choice(role, cuts, tiers)

    lines += _block(
        f"void {role.function()}()",
        _interaction_body(blueprint, role, role.function("_" + tiers[0])),
    )
    return lines + [""] + _block(f"void {role.function('_step')}()", step)


def _audit_lines(blueprint: Blueprint) -> List[str]:
    body: List[str] = []
    for interaction in blueprint.interactions:
        if not interaction.guarded:
            continue
        fail = [f"fail() @spec({interaction.spec_id});"]
        if interaction.kind == SS:
            body += _block(
                f"if ({interaction.marker} == 1)",
                _block(
                    f"if ({COLLIDES}({interaction.slot}, "
                    f"{interaction.trigger}) == 1)",
                    fail,
                ),
            )
        else:
            body += _block(
                f"if ({COLLIDES}({interaction.seen}, "
                f"{interaction.trigger}) == 1)",
                fail,
            )
    return _block(f"void {AUDIT}()", body or ["return;"])


def _route_lines(blueprint: Blueprint) -> List[str]:
    domain = blueprint.inputs[-1]
    middle = (domain.lo + domain.hi) // 2
    return _block(
        f"int {ROUTE}()",
        _block(f"if ({domain.name} > {middle})", ["return 2;"])
        + ["return 1;"],
    )


def _helper_lines() -> List[str]:
    grade = _block(
        f"int {GRADE}(int value, int cut)",
        _block("if (value < cut)", ["return 0;"]) + ["return 1;"],
    )
    escalate = _block(f"int {ESCALATE}()", ["return 1;"])
    collides = _block(
        f"int {COLLIDES}(int value, int expected)",
        _block("if (value == expected)", [f"return {ESCALATE}();"])
        + ["return 0;"],
    )
    return grade + [""] + escalate + [""] + collides


def render_unit(blueprint: Blueprint) -> str:
    """Render a blueprint as FLC source text.

    Args:
        blueprint: The product line.

    Returns:
        str: Source text of the unit.

    Raises:
        BlueprintError: If the blueprint is inconsistent.
    """
    blueprint.check()

    lines = [
        f"// {blueprint.name}: {blueprint.description}",
        f"features {', '.join(blueprint.features)};",
        "",
    ]
    lines += [f"{SLOT_TYPE} {domain.name};" for domain in blueprint.inputs]
    for interaction in blueprint.interactions:
        lines += [f"{SLOT_TYPE} {name};" for name in interaction.shared]
    lines += [""] + _route_lines(blueprint)
    lines += [""] + _helper_lines()

    for role in blueprint.roles:
        lines += ["", f"#if {role.feature}"]
        lines += _role_lines(blueprint, role)
        lines.append("#endif")

    main = [
        f"make_symbolic({domain.name}, {domain.lo}, {domain.hi});"
        for domain in blueprint.inputs
    ]
    main.append(f"{ROUTE}();")
    for role in blueprint.roles:
        main += [f"#if {role.feature}", f"{role.function()}();", "#endif"]
    main.append(f"{AUDIT}();")
    for role in blueprint.roles:
        main += [
            f"#if {role.feature}",
            f"{role.function('_step')}();",
            "#endif",
        ]

    lines += [""] + _audit_lines(blueprint)
    lines += [""] + _block("void main()", main)
    return "\n".join(lines) + "\n"


def product_name(features: Iterable[str]) -> str:
    """Name of the product enabling the given features."""
    return "_".join(feature.lower() for feature in features)


def pairwise_products(features: Tuple[str, ...]) -> List[ProductDef]:
    """Every single feature followed by every pair of features.

    Args:
        features: Feature names in pipeline order.

    Returns:
        list: `len(features)` singles and all pairs, in pipeline order.
    """
    groups = [(feature,) for feature in features]
    groups += list(combinations(features, 2))
    return [
        ProductDef(product_name(group), frozenset(group)) for group in groups
    ]


def seeded_products(blueprint: Blueprint) -> List[ProductDef]:
    """Singles plus one product per interacting pair.

    Args:
        blueprint: The product line.

    Returns:
        list: Products of a large generated line.
    """
    products = [
        ProductDef(product_name((feature,)), frozenset((feature,)))
        for feature in blueprint.features
    ]
    names = {product.name for product in products}
    for interaction in blueprint.interactions:
        group = (interaction.source, interaction.dest)
        name = product_name(group)
        if name not in names:
            names.add(name)
            products.append(ProductDef(name, frozenset(group)))
    return products


SCALE_INPUTS = (
    InputDomain("msg", 0, 7),
    InputDomain("user", 0, 3),
    InputDomain("mode", 0, 3),
)


def scaled_blueprint(
    features: int, seed: int = 0, padding: int = 100
) -> Blueprint:
    """Generate a product line with many features.

    One interaction is seeded per four features between randomly chosen
    features; the kinds, inputs and triggers come from the seed.

    Args:
        features: Number of features, at least 2.
        seed: Seed of the generator.
        padding: Straight-line statements per role.

    Returns:
        Blueprint: The generated product line.

    Raises:
        BlueprintError: If fewer than two features are requested.
    """
    if features < 2:
        raise BlueprintError("a scaled product line needs 2 features")

    rng = random.Random(seed)
    roles = tuple(
        FeatureRole(
            f"F{index:03d}",
            f"step{index:03d}",
            SCALE_INPUTS[index % len(SCALE_INPUTS)].name,
        )
        for index in range(features)
    )

    pairs = list(combinations(range(features), 2))
    chosen = sorted(rng.sample(pairs, max(1, features // 4)))
    interactions = []
    for number, (first, second) in enumerate(chosen):
        kind = rng.choice(KINDS)
        domain = rng.choice(SCALE_INPUTS)
        if kind == SL:
            offset = rng.randint(1, 9)
        else:
            offset = domain.hi - domain.lo + 2 + rng.randint(0, 9)
        interactions.append(
            Interaction(
                spec_id=f"i{number:03d}",
                source=roles[first].feature,
                dest=roles[second].feature,
                kind=kind,
                slot=f"slot{number:03d}",
                input=domain.name,
                offset=offset,
                trigger=rng.randint(domain.lo, domain.hi) + offset,
            )
        )

    return Blueprint(
        name=f"scale{features}",
        description=f"generated line of {features} feature modules",
        inputs=SCALE_INPUTS,
        roles=roles,
        interactions=tuple(interactions),
        padding=padding,
    )
