"""Typed apply over source-labeled graphs, and term evaluation.

An as-graph pairs a rooted graph with a graph type: one entry per open
source, each entry recording the argument type that slot requests and a
rename map applied to the argument's remaining open sources.

``apply`` fills one slot: the argument is renamed (slot rename, then its
root onto the slot label), composed in, and the slot label forgotten.
Whether the application is defined is decided by numbered conditions checked
in a fixed order; an undefined application is an ordinary result value, not
an exception.  Two condition sets exist: the original one, and a relaxed one
that tolerates arguments whose root carries extra source labels (the
mechanism behind reflexive readings) while guarding the problematic cases.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Union

from .compose import parallel_compose
from .graphs import GraphError, MsGraph, RenameCollisionError, ROOT_LABEL, validate


class LexiconError(GraphError):
    pass


@dataclass(frozen=True)
class GraphType:
    """A finite map from open source labels to argument expectations.

    The root label is never an entry.  Equality is structural.
    """

    entries: Mapping[str, "Slot"] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))
        if ROOT_LABEL in self.entries:
            raise ValueError("the root label cannot be an open slot")

    def domain(self) -> frozenset[str]:
        return frozenset(self.entries)


EMPTY_TYPE = GraphType()


@dataclass(frozen=True)
class Slot:
    """What one open source expects: an argument type and a rename map."""

    requested: GraphType = EMPTY_TYPE
    rename: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rename", dict(self.rename))
        values = list(self.rename.values())
        if len(set(values)) != len(values):
            raise ValueError("slot rename map must be injective")


def type_equal(a: GraphType, b: GraphType) -> bool:
    return a == b


def type_remove(t: GraphType, labels) -> GraphType:
    drop = set(labels)
    return GraphType({k: s for k, s in t.entries.items() if k not in drop})


def type_restrict(t: GraphType, labels) -> GraphType:
    keep = set(labels)
    return GraphType({k: s for k, s in t.entries.items() if k in keep})


def type_rekey(t: GraphType, rename: Mapping[str, str]) -> GraphType:
    """Push entry keys through the rename map (identity off its domain)."""
    out: dict[str, Slot] = {}
    for k, slot in t.entries.items():
        nk = rename.get(k, k)
        if nk in out:
            raise RenameCollisionError(
                f"rekeying a type by {dict(rename)!r} collapses two {nk!r} entries"
            )
        out[nk] = slot
    return GraphType(out)


def format_type(t: GraphType) -> str:
    """Compact one-line rendering, e.g. ``{o, s}`` or ``{s: {o}}``."""
    if not t.entries:
        return "{}"
    parts = []
    for label in sorted(t.entries):
        slot = t.entries[label]
        text = label
        if slot.rename:
            text += "/" + ",".join(f"{a}>{b}" for a, b in sorted(slot.rename.items()))
        if slot.requested.entries:
            text += ": " + format_type(slot.requested)
        parts.append(text)
    return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class AsGraph:
    """A rooted graph annotated with a graph type.

    Valid by construction: the graph must pass validation, carry a root
    source, and the type domain must be exactly the non-root source labels.
    """

    graph: MsGraph
    type: GraphType = EMPTY_TYPE

    def __post_init__(self) -> None:
        problems = validate(self.graph)
        if problems:
            raise ValueError(
                "as-graph over an invalid graph: " + "; ".join(p.detail for p in problems)
            )
        if ROOT_LABEL not in self.graph.sources:
            raise ValueError("as-graph requires a root source")
        open_sources = set(self.graph.sources) - {ROOT_LABEL}
        if set(self.type.entries) != open_sources:
            raise ValueError(
                f"type domain {sorted(self.type.entries)} must equal the open "
                f"sources {sorted(open_sources)}"
            )


@dataclass(frozen=True)
class ApplyMode:
    """Which definedness conditions apply.

    variant "original": conditions 1, 2, 3.
    variant "relaxed": conditions 1, 2a, 2b, 4, 3; with ``strict_root`` the
    slot label must also be clear of the argument's extra root labels.
    ``strict_root`` has no effect on the original variant.
    """

    variant: str = "relaxed"
    strict_root: bool = False

    def __post_init__(self) -> None:
        if self.variant not in ("original", "relaxed"):
            raise ValueError(f"unknown apply variant {self.variant!r}")


ORIGINAL = ApplyMode("original")
RELAXED = ApplyMode("relaxed")
RELAXED_STRICT = ApplyMode("relaxed", strict_root=True)


@dataclass(frozen=True)
class Undefined:
    """A failed definedness check: which condition, and why.

    ``strict_clause`` marks the strict-root half of condition 4.  When the
    failure happened inside a term, ``subterm`` holds the innermost failing
    application.
    """

    condition: str
    detail: str
    strict_clause: bool = False
    subterm: str | None = None

    def message(self) -> str:
        where = f" at {self.subterm}" if self.subterm else ""
        return f"undefined ({self.condition}){where}: {self.detail}"


def apply(
    label: str, functor: AsGraph, argument: AsGraph, mode: ApplyMode = RELAXED
) -> AsGraph | Undefined:
    """Fill the functor's ``label`` slot with the argument's root.

    Returns the combined as-graph, or an Undefined naming the first failing
    condition.  Rename collisions and node-label conflicts during the graph
    work are bugs in the inputs, not type mismatches, and raise instead.
    """
    if label == ROOT_LABEL:
        raise ValueError("cannot apply at the root label")
    t1, t2 = functor.type, argument.type

    # condition 1: the slot must exist
    if label not in t1.entries:
        return Undefined(
            "condition 1",
            f"functor has no open {label!r} slot (its type is {format_type(t1)})",
        )
    slot = t1.entries[label]

    if mode.variant == "original":
        # condition 2: requested type matches the argument exactly
        if slot.requested != t2:
            return Undefined(
                "condition 2",
                f"slot {label!r} requests an argument of type "
                f"{format_type(slot.requested)}, but the argument has type {format_type(t2)}",
            )
    else:
        rlab2 = argument.graph.rlab()
        # condition 2a: requested type matches the argument minus the slots
        # its own extra root labels will discharge
        remainder = type_remove(t2, rlab2)
        if slot.requested != remainder:
            return Undefined(
                "condition 2a",
                f"slot {label!r} requests {format_type(slot.requested)}, but after "
                f"discharging extra root labels {sorted(rlab2)} the argument still "
                f"has type {format_type(remainder)}",
            )
        # condition 2b: discharged slots must agree with the functor's own
        for beta, s in type_restrict(t2, rlab2).entries.items():
            if t1.entries.get(beta) != s:
                return Undefined(
                    "condition 2b",
                    f"the argument's extra root label {beta!r} must match the "
                    f"functor's own {beta!r} slot, which differs or is absent",
                )
        # condition 4: the slot label itself must not be an extra root label
        if label in functor.graph.rlab():
            return Undefined(
                "condition 4", f"{label!r} is an extra root label of the functor"
            )
        if mode.strict_root and label in rlab2:
            return Undefined(
                "condition 4",
                f"{label!r} is an extra root label of the argument",
                strict_clause=True,
            )

    # condition 3: the merged type must be a function
    kept = {k: s for k, s in t1.entries.items() if k != label}
    rekeyed = type_rekey(t2, slot.rename)
    for beta, s in rekeyed.entries.items():
        if beta in kept and kept[beta] != s:
            return Undefined(
                "condition 3",
                f"after the merge, slot {beta!r} would be requested two different ways",
            )

    refreshed = argument.graph.rename(slot.rename).rename({ROOT_LABEL: label})
    combined = parallel_compose(functor.graph, refreshed)
    result_graph = combined.forget(label)
    return AsGraph(result_graph, GraphType({**kept, **rekeyed.entries}))


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Leaf:
    lexeme: str


@dataclass(frozen=True)
class App:
    label: str
    functor: "Term"
    argument: "Term"

    def __post_init__(self) -> None:
        if self.label == ROOT_LABEL:
            raise ValueError("cannot apply at the root label")


Term = Union[Leaf, App]


def format_term(t: Term) -> str:
    if isinstance(t, Leaf):
        return t.lexeme
    return f"app_{t.label}({format_term(t.functor)},{format_term(t.argument)})"


def evaluate(
    term: Term, lexicon: Mapping[str, AsGraph], mode: ApplyMode = RELAXED
) -> AsGraph | Undefined:
    """Evaluate a term bottom-up against a lexicon.

    An undefined application anywhere makes the whole term undefined; the
    returned Undefined names the innermost failing application.
    """
    if isinstance(term, Leaf):
        if term.lexeme not in lexicon:
            raise LexiconError(f"unknown lexeme {term.lexeme!r}")
        return lexicon[term.lexeme]
    if isinstance(term, App):
        functor = evaluate(term.functor, lexicon, mode)
        if isinstance(functor, Undefined):
            return functor
        argument = evaluate(term.argument, lexicon, mode)
        if isinstance(argument, Undefined):
            return argument
        result = apply(term.label, functor, argument, mode)
        if isinstance(result, Undefined) and result.subterm is None:
            result = replace(result, subterm=format_term(term))
        return result
    raise TypeError(f"not a term: {term!r}")
