"""Independent oracles and random instance generators shared by the tests.

Nothing here calls the code paths it is used to check: the merge oracle does
a plain top-down dict update, the alignment oracle enumerates every
injective partial map with its own cost function, and the metric oracle
re-derives each ratio from the counts.
"""

import itertools
import random

from casematch.corpus import Chunk, ChunkSentence, GoldFrame
from casematch.lexicon import (ComponentSpec, Lexicon, ModelScheme, Pattern, PrepositionGroup,
                               Slot, VerbClass, VerbEntry)
from casematch.matcher import CaseFrame, CostTable
from casematch.ontology import Ontology

# -- inheritance -----------------------------------------------------------------

SMALL_ONTOLOGY = Ontology({
    "Animate": "Top", "Human": "Animate", "Animal": "Animate",
    "Place": "Top", "City": "Place", "Time": "Top", "Manner": "Top",
})
LABELS = sorted(SMALL_ONTOLOGY.labels)
GROUPS = {
    "g_a": PrepositionGroup("g_a", frozenset({"a", "para"})),
    "g_de": PrepositionGroup("g_de", frozenset({"de", "desde"})),
    "g_con": PrepositionGroup("g_con", frozenset({"con"})),
}
FIELD_VALUES = {
    "syntax": ["NP", "PP", "x", (("Human", "PP"), ("Top", "NP"))],
    "prep": ["x", "none", "g_a", "g_de", "g_con"],
    "sem": LABELS,
    "agree": [True, False],
    "opt": [True, False],
}


def random_fields(rng, keys=None):
    keys = keys or list(FIELD_VALUES)
    return {k: rng.choice(FIELD_VALUES[k]) for k in keys}


def random_partial(rng):
    keys = [k for k in FIELD_VALUES if rng.random() < 0.4]
    return random_fields(rng, keys)


def random_hierarchy(rng):
    """Root class, subclass, sub-subclass and one verb, each with random overrides.

    Returns ``(lexicon, verb, layers)`` where ``layers`` holds the raw override
    dicts the oracle needs.
    """
    n = rng.randint(1, 5)
    root = {i: dict(role=f"r{i}", **random_fields(rng)) for i in range(1, n + 1)}
    sub = {i: random_partial(rng) for i in range(1, n + 1) if rng.random() < 0.6}
    extra = n + 1 if rng.random() < 0.3 else None
    if extra:
        sub[extra] = dict(role=f"r{extra}", **random_fields(rng))
    ids = list(range(1, n + 1)) + ([extra] if extra else [])
    subsub = {i: random_partial(rng) for i in ids if rng.random() < 0.6}
    roles = {i: (root.get(i) or sub[i])["role"] for i in ids}
    verb_over = {roles[i]: random_partial(rng) for i in ids if rng.random() < 0.6}
    verb_over = {r: f for r, f in verb_over.items() if f}

    classes = {
        "c0": VerbClass("c0", None, root),
        "c1": VerbClass("c1", "c0", sub),
        "c2": VerbClass("c2", "c1", subsub),
    }
    verb = VerbEntry("v", "1", "c2", verb_over)
    lex = Lexicon(GROUPS, classes, [ModelScheme("basic", "c0")], {verb.key: verb},
                  SMALL_ONTOLOGY)
    return lex, verb, (root, sub, subsub, verb_over)


def naive_merge(layers):
    root, sub, subsub, verb_over = layers
    merged = {}
    for layer in (root, sub, subsub):
        for cid, fields in layer.items():
            merged.setdefault(cid, {})
            for key, value in fields.items():
                merged[cid][key] = value
    by_role = {fields["role"]: cid for cid, fields in merged.items()}
    for role, fields in verb_over.items():
        for key, value in fields.items():
            merged[by_role[role]][key] = value
    return merged


# -- alignment -------------------------------------------------------------------

CATS = ["NP", "PP", "AdvP", "AdjP", "VP"]


def oracle_match_cost(spec, chunk, verb, ontology, costs, groups):
    cost = 0.0
    expected = spec.syntax
    if isinstance(expected, tuple):
        expected = None
        for label, category in spec.syntax:
            if label in ontology.ancestors(chunk.sem):
                expected = category
                break
    if expected != "x" and expected != chunk.category:
        cost += costs.c_syn
    if spec.prep not in ("x", "none") and chunk.prep is not None \
            and chunk.prep not in groups[spec.prep].members:
        cost += costs.c_prep
    if spec.sem not in ontology.ancestors(chunk.sem):
        cost += costs.c_sem
    if spec.agree:
        for a, b in ((chunk.person, verb.person), (chunk.number, verb.number)):
            if a != "-" and b != "-" and a != b:
                cost += costs.c_agr
                break
    return cost


def all_mappings(pattern, sentence):
    """Every injective partial map; the verb slot is pinned to the verb chunk."""
    others = [c.index for c in sentence.chunks if c.index != sentence.verb_index]
    options = []
    for slot in pattern.slots:
        if slot.is_verb:
            options.append([sentence.verb_index])
        else:
            options.append([None] + others)
    for combo in itertools.product(*options):
        used = [c for c in combo if c is not None]
        if len(used) == len(set(used)):
            yield combo


def oracle_cost(pattern, sentence, mapping, ontology, costs, groups):
    total = 0.0
    for slot, c in zip(pattern.slots, mapping):
        if slot.is_verb:
            continue
        if c is None:
            total += costs.c_del_optional if slot.spec.opt else costs.c_del_mandatory
        else:
            total += oracle_match_cost(slot.spec, sentence.chunks[c], sentence.verb,
                                       ontology, costs, groups)
    used = {c for c in mapping if c is not None}
    total += costs.c_ins * sum(1 for c in sentence.chunks if c.index not in used)
    matched = [c for c in mapping if c is not None]
    inv = sum(1 for i, j in itertools.combinations(range(len(matched)), 2)
              if matched[i] > matched[j])
    return total + costs.c_move * inv


def brute_force_cost(pattern, sentence, ontology, costs, groups):
    return min(oracle_cost(pattern, sentence, m, ontology, costs, groups)
               for m in all_mappings(pattern, sentence))


def random_spec(rng, cid):
    return ComponentSpec(id=cid, role=f"r{cid}", opt=rng.random() < 0.5, **{
        k: v for k, v in random_fields(rng).items() if k != "opt"})


def random_costs(rng):
    mand = rng.choice([0.5, 1.0, 1.5, rng.uniform(0, 2)])
    return CostTable(
        c_del_mandatory=mand,
        c_del_optional=rng.uniform(0, mand),
        c_ins=rng.uniform(0, 1.5),
        c_move=rng.uniform(0, 1),
        c_syn=rng.uniform(0, 1.5),
        c_prep=rng.uniform(0, 1),
        c_sem=rng.uniform(0, 1),
        c_agr=rng.uniform(0, 1),
        K=rng.uniform(0, 2),
    )


def random_instance(rng, max_pattern=4, max_chunks=4):
    """A random (pattern, sentence, costs) with at most the given sizes (verb included)."""
    n_slots = rng.randint(1, max_pattern)
    specs = [random_spec(rng, i + 1) for i in range(n_slots - 1)]
    verb_at = rng.randint(0, len(specs))
    slots = [Slot((s.role,), s) for s in specs]
    slots.insert(verb_at, Slot(("event",), None))
    pattern = Pattern("v", "1", "basic", tuple(slots))

    n_chunks = rng.randint(1, max_chunks)
    verb_index = rng.randrange(n_chunks)
    chunks = []
    for i in range(n_chunks):
        if i == verb_index:
            chunks.append(Chunk(i, "VP", "v", "v", None, "Top",
                                rng.choice("3-"), rng.choice(["sg", "pl", "-"])))
            continue
        category = rng.choice(CATS)
        prep = rng.choice(["a", "de", "con", "por"]) if category == "PP" else None
        chunks.append(Chunk(i, category, f"c{i}", f"h{i}", prep, rng.choice(LABELS),
                            rng.choice(["1", "3", "-"]), rng.choice(["sg", "pl", "-"])))
    sentence = ChunkSentence("r", tuple(chunks), verb_index)
    return pattern, sentence, random_costs(rng)


# -- scoring ---------------------------------------------------------------------

def oracle_metrics(cor, inc, mis, spu):
    """Second, deliberately plain coding of the MUC-7 ratios."""
    pos = cor + inc + mis
    act = cor + inc + spu

    def div(a, b):
        return a / b if b else 0.0

    p = div(cor, act)
    r = div(cor, pos)

    def f(beta):
        b2 = beta ** 2
        return div((b2 + 1.0) * p * r, b2 * p + r)

    return {
        "POS": pos, "ACT": act, "REC": r, "PRE": p,
        "UND": div(mis, pos), "OVG": div(spu, act),
        "SUB": div(inc, cor + inc),
        "ERR": div(inc + spu + mis, cor + inc + spu + mis),
        "F1": f(1.0), "F2": f(2.0), "F0.5": f(0.5),
    }


ROLES = ("starter", "entity", "route", "source", "destination")


def count_fixture(cor, inc, mis, spu, model="v#1.basic"):
    """Gold and response frames whose role-level tally is exactly the given counts.

    Outcomes are dealt five roles per sentence; gold and answer always share
    the model, so model-level counts are all COR.
    """
    outcomes = ["cor"] * cor + ["inc"] * inc + ["mis"] * mis + ["spu"] * spu
    gold, frames = [], []
    for n, start in enumerate(range(0, len(outcomes), len(ROLES))):
        sid = f"t{n:04d}"
        g_fills, a_fills = {}, {}
        for role, outcome in zip(ROLES, outcomes[start:start + len(ROLES)]):
            if outcome in ("cor", "inc", "mis"):
                g_fills[role] = f"{sid} {role}"
            if outcome == "cor":
                a_fills[role] = f"{sid} {role}"
            elif outcome in ("inc", "spu"):
                a_fills[role] = f"{sid} {role} other"
        gold.append(GoldFrame(sid, model, g_fills))
        frames.append(CaseFrame(sid, model, a_fills, 0.0, 0, 0, 0, 0))
    return gold, frames


def random_three_level(seed):
    return random_hierarchy(random.Random(seed))
