"""Edit-script alignment of verb patterns against chunk sequences.

An alignment is an injective partial map from pattern slots to chunks. Its
cost adds up four kinds of edit operation:

* relabel: attribute mismatches of each matched slot (category, preposition,
  semantics, agreement),
* delete: pattern slots left unmatched,
* insert: chunks left unmatched,
* move: pairs of matched slots whose chunk order reverses the pattern order.

The verb slot is always bound to the sentence's main verb chunk. The final
score adds ``k / len(pattern)`` so that larger models are not systematically
beaten by smaller ones.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

from .corpus import NOMODEL, check_model_name, format_fills, parse_fills
from .errors import InputError, InvariantError
from .lexicon import NO_PREP, UNSPECIFIED


@dataclass(frozen=True)
class CostTable:
    c_del_mandatory: float = 1.0
    c_del_optional: float = 0.0
    c_ins: float = 0.5
    c_move: float = 0.25
    c_syn: float = 0.75
    c_prep: float = 0.5
    c_sem: float = 0.5
    c_agr: float = 0.5
    K: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
                raise ValueError(f"{f.name} must be a finite non-negative number, got {value!r}")
        if self.c_del_optional > self.c_del_mandatory:
            raise ValueError("c_del_optional must not exceed c_del_mandatory")

    def scaled(self, factor):
        return CostTable(**{k: v * factor for k, v in asdict(self).items()})

    @property
    def tolerance(self):
        # absolute slack for comparing summed float costs
        return 1e-9 * (1.0 + sum(asdict(self).values()))


COST_KEYS = tuple(f.name for f in fields(CostTable))


def load_costs(source, filename=None):
    """Parse ``key = value`` lines; missing keys keep their defaults."""
    values = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError("expected 'key = value'", filename, lineno, line)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in COST_KEYS:
            raise InputError("unknown cost key", filename, lineno, key)
        if key in values:
            raise InputError("repeated cost key", filename, lineno, key)
        try:
            values[key] = float(value)
        except ValueError:
            raise InputError("cost must be a number", filename, lineno, value) from None
    try:
        return CostTable(**values)
    except ValueError as exc:
        raise InputError(str(exc), filename) from None


@dataclass(frozen=True)
class Alignment:
    pattern: object
    sentence_id: str
    mapping: tuple      # per pattern slot: chunk index or None
    relabels: tuple     # per pattern slot: names of mismatched attributes
    n_relabel: int
    n_delete: int
    n_insert: int
    n_move: int
    raw_cost: float
    score: float

    @property
    def model(self):
        return self.pattern.name


@dataclass(frozen=True)
class CaseFrame:
    sentence_id: str
    model: str
    fills: dict
    score: float
    n_relabel: int
    n_delete: int
    n_insert: int
    n_move: int
    alignment: Alignment | None = None

    @property
    def lemma(self):
        return self.model.split("#", 1)[0]


def element_match_cost(spec, chunk, verb, ontology, costs, prep_groups):
    """Relabel cost of matching one component spec to one chunk.

    Returns ``(cost, mismatched)`` where ``mismatched`` names the attributes
    that would need relabelling. ``prep_groups`` maps group names to member
    sets. The preposition is only checked on chunks that carry one.
    """
    mismatched = []
    expected = spec.expected_category(chunk.sem, ontology)
    if expected != UNSPECIFIED and expected != chunk.category:
        mismatched.append("syntax")
    if spec.prep not in (UNSPECIFIED, NO_PREP) and chunk.prep is not None:
        if chunk.prep not in _members(prep_groups[spec.prep]):
            mismatched.append("prep")
    if not ontology.subsumes(spec.sem, chunk.sem):
        mismatched.append("sem")
    if spec.agree and not chunk.agrees_with(verb):
        mismatched.append("agr")
    cost = 0.0
    for name in mismatched:
        cost += _WEIGHT[name](costs)
    return cost, tuple(mismatched)


_WEIGHT = {
    "syntax": lambda c: c.c_syn,
    "prep": lambda c: c.c_prep,
    "sem": lambda c: c.c_sem,
    "agr": lambda c: c.c_agr,
}


def _members(group):
    return getattr(group, "members", group)


def inversions(mapping):
    """Pairs of matched slots whose chunk order reverses slot order."""
    matched = [c for c in mapping if c is not None]
    return sum(1 for i in range(len(matched)) for j in range(i + 1, len(matched))
               if matched[i] > matched[j])


def _delete_cost(slot, costs):
    return costs.c_del_optional if slot.optional else costs.c_del_mandatory


class _Search:
    """Branch and bound over injective partial maps, keeping every optimum."""

    def __init__(self, pattern, sentence, ontology, costs, prep_groups):
        self.pattern = pattern
        self.sentence = sentence
        self.costs = costs
        self.tol = costs.tolerance
        self.slots = pattern.slots
        self.free_chunks = [c.index for c in sentence.chunks if c.index != sentence.verb_index]
        verb = sentence.verb
        self.match = {}
        self.delete = []
        for s, slot in enumerate(self.slots):
            if slot.is_verb:
                self.delete.append(0.0)
                continue
            self.delete.append(_delete_cost(slot, costs))
            for c in self.free_chunks:
                self.match[s, c] = element_match_cost(
                    slot.spec, sentence.chunks[c], verb, ontology, costs, prep_groups)
        # cheapest way each slot can be handled, ignoring exclusivity
        self.floor = []
        for s, slot in enumerate(self.slots):
            if slot.is_verb:
                self.floor.append(0.0)
            else:
                options = [self.delete[s]] + [self.match[s, c][0] for c in self.free_chunks]
                self.floor.append(min(options))
        self.suffix_floor = [0.0] * (len(self.slots) + 1)
        for s in range(len(self.slots) - 1, -1, -1):
            self.suffix_floor[s] = self.suffix_floor[s + 1] + self.floor[s]
        self.suffix_open = [0] * (len(self.slots) + 1)
        for s in range(len(self.slots) - 1, -1, -1):
            self.suffix_open[s] = self.suffix_open[s + 1] + (0 if self.slots[s].is_verb else 1)
        self.best = math.inf
        self.solutions = []

    def run(self):
        self._visit(0, [], set(), 0.0)
        return self.solutions

    def _bound(self, s, used, cost):
        free = len(self.free_chunks) - len(used)
        forced_inserts = max(0, free - self.suffix_open[s])
        return cost + self.suffix_floor[s] + forced_inserts * self.costs.c_ins

    def _visit(self, s, mapping, used, cost):
        if self._bound(s, used, cost) > self.best + self.tol:
            return
        if s == len(self.slots):
            total = cost + (len(self.free_chunks) - len(used)) * self.costs.c_ins
            if total < self.best - self.tol:
                self.best = total
                self.solutions = [s_ for s_ in self.solutions if s_[1] <= total + self.tol]
            if total <= self.best + self.tol:
                self.solutions.append((tuple(mapping), total))
            return
        slot = self.slots[s]
        if slot.is_verb:
            target = self.sentence.verb_index
            moves = sum(1 for c in mapping if c is not None and c > target)
            mapping.append(target)
            self._visit(s + 1, mapping, used, cost + moves * self.costs.c_move)
            mapping.pop()
            return
        for c in self.free_chunks:
            if c in used:
                continue
            moves = sum(1 for m in mapping if m is not None and m > c)
            step = self.match[s, c][0] + moves * self.costs.c_move
            mapping.append(c)
            used.add(c)
            self._visit(s + 1, mapping, used, cost + step)
            used.discard(c)
            mapping.pop()
        mapping.append(None)
        self._visit(s + 1, mapping, used, cost + self.delete[s])
        mapping.pop()

    def alignment(self, mapping):
        relabels = []
        n_relabel = n_delete = 0
        raw = 0.0
        for s, slot in enumerate(self.slots):
            c = mapping[s]
            if slot.is_verb:
                relabels.append(())
            elif c is None:
                relabels.append(())
                n_delete += 1
                raw += self.delete[s]
            else:
                cost, record = self.match[s, c]
                relabels.append(record)
                n_relabel += len(record)
                raw += cost
        used = {c for c in mapping if c is not None}
        n_insert = sum(1 for c in self.free_chunks if c not in used)
        n_move = inversions(mapping)
        raw += n_insert * self.costs.c_ins + n_move * self.costs.c_move
        return Alignment(
            pattern=self.pattern,
            sentence_id=self.sentence.id,
            mapping=tuple(mapping),
            relabels=tuple(relabels),
            n_relabel=n_relabel,
            n_delete=n_delete,
            n_insert=n_insert,
            n_move=n_move,
            raw_cost=raw,
            score=raw + self.costs.K / len(self.slots),
        )


def _empty_cost(pattern, sentence, costs):
    deletes = sum(_delete_cost(slot, costs) for slot in pattern.slots if not slot.is_verb)
    return deletes + (len(sentence.chunks) - 1) * costs.c_ins


def _mapping_key(alignment):
    return (alignment.n_delete, alignment.n_relabel,
            tuple(-1 if c is None else c for c in alignment.mapping))


def align_all(pattern, sentence, ontology, costs, prep_groups):
    """Every minimum-cost alignment of ``pattern`` to ``sentence``, best first."""
    if pattern.lemma != sentence.verb.head:
        raise ValueError(f"pattern verb {pattern.lemma!r} does not match "
                         f"sentence verb {sentence.verb.head!r}")
    search = _Search(pattern, sentence, ontology, costs, prep_groups)
    found = search.run()
    alignments = sorted((search.alignment(list(m)) for m, _ in found), key=_mapping_key)
    bound = _empty_cost(pattern, sentence, costs)
    for a in alignments:
        if a.raw_cost > bound + costs.tolerance or a.raw_cost < -costs.tolerance:
            raise InvariantError(f"alignment cost {a.raw_cost} outside [0, {bound}] "
                                 f"for {pattern.name} on {sentence.id}")
        if abs(a.raw_cost - search.best) > costs.tolerance:
            raise InvariantError("recomputed alignment cost disagrees with search")
    return alignments


def align(pattern, sentence, ontology, costs, prep_groups):
    """The preferred minimum-cost alignment (fewest deletes, then fewest relabels)."""
    return align_all(pattern, sentence, ontology, costs, prep_groups)[0]


def _frame(alignment, sentence):
    fills = {}
    for slot, c in zip(alignment.pattern.slots, alignment.mapping):
        if c is None:
            continue
        for role in slot.roles:
            fills[role] = sentence.chunks[c].text
    return CaseFrame(
        sentence_id=sentence.id,
        model=alignment.model,
        fills=fills,
        score=alignment.score,
        n_relabel=alignment.n_relabel,
        n_delete=alignment.n_delete,
        n_insert=alignment.n_insert,
        n_move=alignment.n_move,
        alignment=alignment,
    )


def _model_key(alignment):
    return (alignment.n_delete, alignment.n_relabel, -len(alignment.pattern), alignment.model)


def parse_sentence(sentence, lexicon, costs, all_instantiations=True):
    """Case frames of the best-scoring model for ``sentence``.

    Every sense of the main verb's lemma competes. An empty list means no
    model exists for the verb.
    """
    patterns = lexicon.patterns_for(sentence.verb.head)
    if not patterns:
        return []
    ontology = lexicon.ontology
    per_model = [align_all(p, sentence, ontology, costs, lexicon.prep_groups) for p in patterns]
    best_score = min(alignments[0].score for alignments in per_model)
    contenders = [a for a in per_model if a[0].score <= best_score + costs.tolerance]
    winner = min(contenders, key=lambda alignments: _model_key(alignments[0]))

    frames = []
    seen = set()
    for alignment in winner:
        frame = _frame(alignment, sentence)
        key = tuple(frame.fills.items())
        if key in seen:
            continue
        seen.add(key)
        frames.append(frame)
        if not all_instantiations:
            break
    return frames


# -- output format ------------------------------------------------------------

def format_frame(frame):
    return "\t".join([
        frame.sentence_id,
        frame.model,
        f"score={frame.score:.4f}",
        f"rel={frame.n_relabel} del={frame.n_delete} ins={frame.n_insert} mov={frame.n_move}",
        format_fills(frame.fills),
    ])


def format_nomodel(sentence_id):
    return f"{sentence_id}\t{NOMODEL}"


def read_frames(source, filename=None):
    """Parse matcher output back into frames.

    Returns ``(frames, nomodel_ids)``; the alignment field of each frame is None.
    """
    frames = []
    nomodel = []
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(None, 1)
        sid = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if rest.strip() == NOMODEL:
            nomodel.append(sid)
            continue
        tokens = rest.split(None, 6)
        if len(tokens) < 6:
            raise InputError("truncated frame line", filename, lineno, line)
        model = check_model_name(tokens[0], filename, lineno)
        counts = {}
        for token in tokens[1:6]:
            key, _, value = token.partition("=")
            if key not in ("score", "rel", "del", "ins", "mov") or not value:
                raise InputError("expected score/rel/del/ins/mov fields", filename, lineno, token)
            try:
                counts[key] = float(value) if key == "score" else int(value)
            except ValueError:
                raise InputError("bad numeric field", filename, lineno, token) from None
        fills = parse_fills(tokens[6] if len(tokens) > 6 else "", filename, lineno)
        frames.append(CaseFrame(
            sentence_id=sid, model=model, fills=fills, score=counts["score"],
            n_relabel=counts["rel"], n_delete=counts["del"],
            n_insert=counts["ins"], n_move=counts["mov"],
        ))
    return frames, nomodel
