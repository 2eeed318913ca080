"""Constructive (labeled) sunflowers and the alignment extraction pipeline.

A *labeled set* is a partial map from element ids to labels over a finite
alphabet.  A family of labeled sets contains a *labeled sunflower* of order
``a`` when some ``a`` members pairwise intersect in exactly one common core
and agree on the labels of every core element.  The guarantee is
constructive: any family of at least ``a * b! * (a*|Sigma|)^b`` members of
cardinality at most ``b`` contains one, found by recursing on a frequent
element (splitting its holders by label) or, when no element is frequent,
by greedy disjoint packing.  Below the threshold the same search runs
best-effort and may return nothing.

An *alignment* attaches a semi-ladder certificate to a nice path
decomposition: t_i is the bag index introducing a_i.  Extraction treats the
introduce bags as a labeled family — the label of bag vertex w in member i
is the capped distance from a_i to w — so a labeled sunflower of the family
is exactly a *sunflower alignment*: introduce bags with one common core and
identical distance profiles on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from ladderlab.errors import ArgumentError, InternalError, StructuralError
from ladderlab.graphcore import Graph, raw_distances
from ladderlab.decomposition import (
    PathDecomposition,
    introduce_indices,
    to_nice,
    validate_path_decomposition,
)
from ladderlab.ladder import (
    LadderCertificate,
    LadderKind,
    ladder_subset,
    verify_certificate,
)


@dataclass(frozen=True)
class LabeledSet:
    """A partial map element-id -> label-id, stored sorted by element."""

    elements: tuple[tuple[int, int], ...]

    def __init__(self, elements):
        if isinstance(elements, dict):
            pairs = list(elements.items())
        else:
            pairs = [(e, l) for e, l in elements]
        items = tuple(sorted((int(e), int(l)) for e, l in pairs))
        if len(items) != len(set(e for e, _ in items)):
            raise ArgumentError("duplicate element in labeled set")
        object.__setattr__(self, "elements", items)

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def domain(self) -> frozenset[int]:
        return frozenset(e for e, _ in self.elements)

    def as_dict(self) -> dict[int, int]:
        return dict(self.elements)


@dataclass(frozen=True)
class SunflowerWitness:
    """Members of a family forming a (labeled) sunflower with one core."""

    member_indices: tuple[int, ...]
    core: frozenset[int]
    core_labels: tuple[tuple[int, int], ...]

    def __init__(self, member_indices, core, core_labels):
        object.__setattr__(self, "member_indices", tuple(int(i) for i in member_indices))
        object.__setattr__(self, "core", frozenset(int(e) for e in core))
        labels = dict(core_labels)
        object.__setattr__(
            self, "core_labels", tuple(sorted((int(e), int(l)) for e, l in labels.items()))
        )

    @property
    def order(self) -> int:
        return len(self.member_indices)

    def labels_dict(self) -> dict[int, int]:
        return dict(self.core_labels)


def labeled_sunflower_threshold(a: int, b: int, sigma_size: int) -> int:
    """Family size above which order-a extraction always succeeds."""
    return a * factorial(b) * (a * sigma_size) ** b


def alignment_threshold(order: int, width: int, d: int) -> int:
    """Certificate order above which an order-``order`` sunflower alignment
    extraction always succeeds on a width-``width`` decomposition."""
    return order * factorial(width + 1) * (order * (d + 2)) ** (width + 1)


def _search(members, a: int, b: int, sigma_size: int):
    """Recursive search; members are (original_index, {element: label}) pairs.

    Returns (indices, core_set, core_labels_dict) or None.  Branch order:
    the lemma's frequent-element recursion, greedy disjoint packing, then a
    best-effort branch on the most frequent element.
    """
    if a <= 0:
        return ([], set(), {})
    if len(members) < a:
        return None
    if b == 0:
        return ([idx for idx, _ in members[:a]], set(), {})

    freq: dict[int, int] = {}
    for _, elems in members:
        for e in elems:
            freq[e] = freq.get(e, 0) + 1

    def branch(x: int):
        holders = [(idx, elems) for idx, elems in members if x in elems]
        buckets: dict[int, list] = {}
        for idx, elems in holders:
            buckets.setdefault(elems[x], []).append((idx, elems))
        required = a * factorial(b - 1) * (a * sigma_size) ** (b - 1)
        eligible = sorted(l for l, bucket in buckets.items() if len(bucket) >= required)
        if eligible:
            label = eligible[0]
        else:
            best = max(len(bucket) for bucket in buckets.values())
            label = min(l for l, bucket in buckets.items() if len(bucket) == best)
        reduced = [
            (idx, {e: l for e, l in elems.items() if e != x})
            for idx, elems in buckets[label]
        ]
        sub = _search(reduced, a, b - 1, sigma_size)
        if sub is None:
            return None
        indices, core, labels = sub
        core = set(core)
        core.add(x)
        labels = dict(labels)
        labels[x] = label
        return (indices, core, labels)

    threshold = factorial(b - 1) * (a * sigma_size) ** b
    frequent = sorted(x for x, f in freq.items() if f >= threshold)
    if frequent:
        found = branch(frequent[0])
        if found is not None:
            return found

    kept = []
    used: set[int] = set()
    for idx, elems in members:
        if used.isdisjoint(elems):
            kept.append(idx)
            used.update(elems)
            if len(kept) == a:
                return (kept, set(), {})

    if freq:
        best = max(freq.values())
        if best >= 2:
            x = min(e for e, f in freq.items() if f == best)
            if not frequent or x != frequent[0]:
                found = branch(x)
                if found is not None:
                    return found
    return None


def find_labeled_sunflower(family, a: int, b: int, sigma) -> SunflowerWitness | None:
    """Search ``family`` for a labeled sunflower of order ``a``.

    Plain sunflowers are the single-letter-alphabet case.  Success is
    unconditional at or above ``labeled_sunflower_threshold(a, b, |sigma|)``;
    below it the search is best-effort and returns None on failure.
    """
    family = list(family)
    alphabet = sorted(set(int(s) for s in sigma))
    if not alphabet:
        raise ArgumentError("the label alphabet must be non-empty")
    if a < 1:
        raise ArgumentError("sunflower order a must be >= 1")
    if b < 0:
        raise ArgumentError("cardinality bound b must be >= 0")
    allowed = set(alphabet)
    members = []
    for i, member in enumerate(family):
        if not isinstance(member, LabeledSet):
            member = LabeledSet(member)
        if member.cardinality > b:
            raise ArgumentError(
                f"family member {i} has cardinality {member.cardinality} > b = {b}"
            )
        bad = [l for _, l in member.elements if l not in allowed]
        if bad:
            raise ArgumentError(
                f"family member {i} uses label {bad[0]} outside the alphabet"
            )
        members.append((i, member.as_dict()))
    found = _search(members, a, b, len(alphabet))
    if found is None:
        return None
    indices, core, labels = found
    witness = SunflowerWitness(sorted(indices), core, labels)
    report = validate_sunflower_witness(family, witness)
    if not report[0]:
        raise InternalError(f"search produced an invalid witness: {report[1]}")
    return witness


def validate_sunflower_witness(family, w: SunflowerWitness) -> tuple[bool, str | None]:
    """Check pairwise-core equality and label agreement; (ok, violation)."""
    family = [m if isinstance(m, LabeledSet) else LabeledSet(m) for m in family]
    if len(set(w.member_indices)) != w.order or w.order < 1:
        return (False, "member indices must be distinct and non-empty")
    for i in w.member_indices:
        if not 0 <= i < len(family):
            return (False, f"member index {i} out of range")
    sets = {i: family[i].domain() for i in w.member_indices}
    if w.order == 1:
        only = w.member_indices[0]
        if not w.core <= sets[only]:
            return (False, "core is not contained in the single member")
    for pos, i in enumerate(w.member_indices):
        for j in w.member_indices[pos + 1:]:
            if sets[i] & sets[j] != w.core:
                return (
                    False,
                    f"members {i} and {j} intersect in "
                    f"{sorted(sets[i] & sets[j])}, not the core",
                )
    labels = w.labels_dict()
    if set(labels) != set(w.core):
        return (False, "core labels must cover exactly the core")
    for i in w.member_indices:
        assigned = family[i].as_dict()
        for e in w.core:
            if assigned.get(e) != labels[e]:
                return (
                    False,
                    f"member {i} labels element {e} as {assigned.get(e)}, "
                    f"core says {labels[e]}",
                )
    return (True, None)


# -- alignments ------------------------------------------------------------


@dataclass(frozen=True)
class Alignment:
    """A semi-ladder whose a_i are pinned to their introduce bags."""

    pd: PathDecomposition
    certificate: LadderCertificate
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(int(i) for i in self.t))

    @property
    def order(self) -> int:
        return self.certificate.order


@dataclass(frozen=True)
class SunflowerAlignment(Alignment):
    """An alignment whose introduce bags form a sunflower with core C."""

    core: frozenset[int] = frozenset()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "core", frozenset(int(v) for v in self.core))


def build_alignment(g: Graph, pd: PathDecomposition, cert: LadderCertificate) -> Alignment:
    """Locate each a_i's introduce bag in the nice form of ``pd``.

    The certificate is re-read as a semi-ladder (strict half graphs qualify
    as-is; an inclusive diagonal does not) and must verify as one.
    """
    sl = cert if cert.kind is LadderKind.SEMI_LADDER else cert.as_kind(LadderKind.SEMI_LADDER)
    report = verify_certificate(g, sl)
    if not report.valid:
        raise StructuralError("alignment requires a verifying semi-ladder certificate")
    vertices = sl.vertices()
    if len(set(vertices)) != len(vertices):
        raise StructuralError("certificate vertices are not pairwise distinct")
    pd_report = validate_path_decomposition(g, pd)
    if not pd_report.valid:
        raise StructuralError(
            f"alignment requires a valid decomposition: {pd_report.violation}"
        )
    nice = to_nice(pd)
    indices = introduce_indices(nice)
    try:
        t = tuple(indices[a] for a in sl.a)
    except KeyError as exc:
        raise StructuralError(f"certificate vertex {exc.args[0]} is in no bag") from exc
    return Alignment(pd=nice, certificate=sl, t=t)


def _profile_labels(g: Graph, source: int, bag, d: int) -> dict[int, int]:
    """Capped distances from source to bag vertices; d+1 encodes infinity."""
    dist = raw_distances(g, source, cap=d)
    return {w: (dist[w] if 0 <= dist[w] <= d else d + 1) for w in bag}


def _check_alignment(g: Graph, al: Alignment) -> None:
    """Raise StructuralError unless ``al`` is a sound extraction input.

    Alignments assembled by hand (rather than by build_alignment) may pin
    vertices to bags of a structure that does not actually decompose the
    graph, reuse a vertex on both sides, or cite stale bag indices; any of
    those would let extraction manufacture witnesses the validator must
    reject, so they are refused up front.
    """
    cert = al.certificate
    if len(al.t) != cert.order:
        raise StructuralError("t must assign one bag per certificate pair")
    if len(set(al.t)) != len(al.t):
        raise StructuralError("bag indices t_i must be distinct")
    for t in al.t:
        if not 0 <= t < al.pd.size:
            raise StructuralError(f"bag index {t} out of range")
    pd_report = validate_path_decomposition(g, al.pd)
    if not pd_report.valid:
        raise StructuralError(
            f"extraction requires a valid decomposition: {pd_report.violation}"
        )
    vertices = cert.vertices()
    if len(set(vertices)) != len(vertices):
        raise StructuralError("certificate vertices are not pairwise distinct")
    sl = cert if cert.kind is LadderKind.SEMI_LADDER else cert.as_kind(LadderKind.SEMI_LADDER)
    report = verify_certificate(g, sl)
    if not report.valid:
        raise StructuralError("extraction requires a verifying semi-ladder certificate")
    bags = al.pd.bags
    for a, t in zip(cert.a, al.t):
        if a not in bags[t]:
            raise StructuralError(f"vertex {a} is missing from its bag {t}")


def extract_sunflower_alignment(
    g: Graph, al: Alignment, target: int, d: int
) -> SunflowerAlignment | None:
    """Extract a sunflower alignment of order up to ``target``.

    Treats the introduce bags as a labeled family (labels = capped
    distances from a_i) and runs the labeled sunflower search, lowering the
    target order until something validates.  Returns None when even order 1
    is unreachable (empty alignment).
    """
    if target < 1:
        raise ArgumentError("target order must be >= 1")
    if d < 1:
        raise ArgumentError("extraction distance d must be >= 1")
    if d != al.certificate.d:
        raise ArgumentError(
            f"extraction distance d={d} must match the certificate "
            f"(d={al.certificate.d}); profiles are validated at the "
            "certificate's distance"
        )
    if al.order == 0:
        return None
    _check_alignment(g, al)
    bags = al.pd.bags
    family = [
        LabeledSet(_profile_labels(g, a, bags[t], d))
        for a, t in zip(al.certificate.a, al.t)
    ]
    b = max(member.cardinality for member in family)
    sigma = range(d + 2)
    for order in range(min(target, len(family)), 0, -1):
        witness = find_labeled_sunflower(family, order, b, sigma)
        if witness is None:
            continue
        picks = tuple(i + 1 for i in witness.member_indices)
        sub_cert = ladder_subset(al.certificate, picks)
        sub_t = tuple(al.t[i] for i in witness.member_indices)
        result = SunflowerAlignment(
            pd=al.pd, certificate=sub_cert, t=sub_t, core=witness.core
        )
        report = validate_sunflower_alignment(g, result)
        if not report[0]:
            raise InternalError(f"extracted alignment failed validation: {report[1]}")
        return result
    return None


def validate_sunflower_alignment(g: Graph, sa: SunflowerAlignment) -> tuple[bool, str | None]:
    """Check the sunflower clauses of ``sa`` against fresh BFS runs.

    Clauses: the stored decomposition is a valid, nice path decomposition
    of the graph; the t indices are distinct positions with a_i in W_{t_i};
    the t-bags pairwise intersect in exactly the core; the distance
    profiles of the a_i on the core agree; and the certificate verifies as
    a semi-ladder on 2*order pairwise-distinct vertices.  The decomposition
    clause is load-bearing: over bags that do not genuinely decompose the
    graph, arbitrarily large "sunflowers" are easy to fabricate, and the
    order-(2d+3) impossibility guarantee only holds without them.
    """
    cert = sa.certificate
    if len(sa.t) != cert.order:
        return (False, "t must assign one bag per certificate pair")
    if len(set(sa.t)) != len(sa.t):
        return (False, "bag indices t_i must be distinct")
    for t in sa.t:
        if not 0 <= t < sa.pd.size:
            return (False, f"bag index {t} out of range")
    pd_report = validate_path_decomposition(g, sa.pd)
    if not pd_report.valid:
        return (
            False,
            "stored decomposition is not a path decomposition of the "
            f"graph: {pd_report.violation}",
        )
    try:
        introduce_indices(sa.pd)
    except StructuralError as exc:
        return (False, f"stored decomposition is not nice: {exc}")
    vertices = cert.vertices()
    if len(set(vertices)) != len(vertices):
        return (False, "certificate vertices are not pairwise distinct")
    bags = sa.pd.bags
    for a, t in zip(cert.a, sa.t):
        if a not in bags[t]:
            return (False, f"vertex {a} is missing from its bag {t}")
    core = sa.core
    for w in core:
        if not 0 <= w < g.n:
            return (False, f"core element {w} is not a vertex")
    for pos in range(len(sa.t)):
        for later in range(pos + 1, len(sa.t)):
            meet = bags[sa.t[pos]] & bags[sa.t[later]]
            if meet != core:
                return (
                    False,
                    f"bags {sa.t[pos]} and {sa.t[later]} intersect in "
                    f"{sorted(meet)}, not the core {sorted(core)}",
                )
    if len(sa.t) == 1 and not core <= bags[sa.t[0]]:
        return (False, "core is not contained in the single bag")
    sl = cert if cert.kind is LadderKind.SEMI_LADDER else cert.as_kind(LadderKind.SEMI_LADDER)
    try:
        report = verify_certificate(g, sl)
    except (StructuralError, ArgumentError) as exc:
        return (False, f"certificate is malformed: {exc}")
    if not report.valid:
        return (
            False,
            f"certificate violation at (i={report.violation.i}, "
            f"j={report.violation.j})",
        )
    reference: dict[int, int] | None = None
    for a in cert.a:
        labels = _profile_labels(g, a, sorted(core), cert.d)
        if reference is None:
            reference = labels
        elif labels != reference:
            return (
                False,
                f"profile of {a} on the core differs from the first member",
            )
    return (True, None)


# -- JSON ------------------------------------------------------------------


def family_to_json_obj(family) -> list:
    out = []
    for member in family:
        if not isinstance(member, LabeledSet):
            member = LabeledSet(member)
        out.append({"elements": {str(e): l for e, l in member.elements}})
    return out


def family_from_json_obj(obj) -> list[LabeledSet]:
    if not isinstance(obj, list):
        raise StructuralError("family JSON must be a list")
    family = []
    for i, entry in enumerate(obj):
        if not isinstance(entry, dict) or "elements" not in entry:
            raise StructuralError(f"family member {i} needs an 'elements' map")
        try:
            family.append(
                LabeledSet({int(e): int(l) for e, l in entry["elements"].items()})
            )
        except (TypeError, ValueError, AttributeError) as exc:
            raise StructuralError(f"family member {i} malformed: {exc}") from exc
    return family


def witness_to_json_obj(w: SunflowerWitness) -> dict:
    return {
        "members": list(w.member_indices),
        "core": sorted(w.core),
        "core_labels": {str(e): l for e, l in w.core_labels},
    }


def witness_from_json_obj(obj) -> SunflowerWitness:
    try:
        return SunflowerWitness(
            obj["members"],
            obj["core"],
            {int(e): int(l) for e, l in obj["core_labels"].items()},
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise StructuralError(f"malformed witness JSON: {exc}") from exc
