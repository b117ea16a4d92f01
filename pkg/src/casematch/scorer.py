"""MUC-7 style scoring of case frames against gold annotations.

Frames are pre-aligned per sentence: for each gold frame, all answers emitted
with the same model compete and the one with the most string-equal role
fills is scored. The ``event`` role (the verb itself) is not counted; only
meaning components are.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field

from .corpus import normalize_text
from .lexicon import EVENT_ROLE

F_BETAS = (1.0, 2.0, 0.5)


@dataclass(frozen=True)
class ScoreCounts:
    COR: int = 0
    INC: int = 0
    MIS: int = 0
    SPU: int = 0

    def __post_init__(self):
        for name in ("COR", "INC", "MIS", "SPU"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def POS(self):
        return self.COR + self.INC + self.MIS

    @property
    def ACT(self):
        return self.COR + self.INC + self.SPU

    def __add__(self, other):
        return ScoreCounts(self.COR + other.COR, self.INC + other.INC,
                           self.MIS + other.MIS, self.SPU + other.SPU)


@dataclass(frozen=True)
class MetricReport:
    counts: ScoreCounts
    REC: float
    PRE: float
    UND: float
    OVG: float
    SUB: float
    ERR: float
    F: dict
    undefined: frozenset = field(default_factory=frozenset)

    @property
    def POS(self):
        return self.counts.POS

    @property
    def ACT(self):
        return self.counts.ACT

    def as_dict(self):
        out = {"REC": self.REC, "PRE": self.PRE, "UND": self.UND, "OVG": self.OVG,
               "SUB": self.SUB, "ERR": self.ERR}
        for beta in F_BETAS:
            out[f_name(beta)] = self.F[beta]
        return out


def f_name(beta):
    return f"F{beta:g}"


def _ratio(num, den, name, undefined):
    if den == 0:
        undefined.add(name)
        return 0.0
    return num / den


def f_measure(precision, recall, beta):
    den = beta * beta * precision + recall
    if den == 0:
        return 0.0
    return (beta * beta + 1.0) * precision * recall / den


def metrics(counts):
    """All ratios of the MUC-7 metric table for one set of counts.

    Ratios with a zero denominator are reported as 0 and named in
    ``undefined``.
    """
    c = counts
    undefined = set()
    rec = _ratio(c.COR, c.POS, "REC", undefined)
    pre = _ratio(c.COR, c.ACT, "PRE", undefined)
    und = _ratio(c.MIS, c.POS, "UND", undefined)
    ovg = _ratio(c.SPU, c.ACT, "OVG", undefined)
    sub = _ratio(c.INC, c.COR + c.INC, "SUB", undefined)
    err = _ratio(c.INC + c.SPU + c.MIS, c.COR + c.INC + c.SPU + c.MIS, "ERR", undefined)
    f = {}
    for beta in F_BETAS:
        if beta * beta * pre + rec == 0:
            undefined.add(f_name(beta))
        f[beta] = f_measure(pre, rec, beta)
    return MetricReport(c, rec, pre, und, ovg, sub, err, f, frozenset(undefined))


# -- role comparison -----------------------------------------------------------

def _scored_fills(fills):
    return {role: normalize_text(text) for role, text in fills.items() if role != EVENT_ROLE}


def compare_fills(answer, gold):
    """Role-level counts for one answer's fills against one gold frame's fills."""
    answer = _scored_fills(answer)
    gold = _scored_fills(gold)
    cor = inc = mis = spu = 0
    for role, text in gold.items():
        if role not in answer:
            mis += 1
        elif answer[role] == text:
            cor += 1
        else:
            inc += 1
    spu = sum(1 for role in answer if role not in gold)
    return ScoreCounts(cor, inc, mis, spu)


def align_response(answers, gold):
    """Pick the answer that best matches ``gold``.

    Most correct roles wins; ties go to fewer spurious fills, then to the
    earliest emitted answer.
    """
    if not answers:
        raise ValueError("no answers to align")
    best = None
    best_key = None
    for i, answer in enumerate(answers):
        counts = compare_fills(answer.fills, gold.fills)
        key = (-counts.COR, counts.SPU, i)
        if best_key is None or key < best_key:
            best, best_key = answer, key
    return best


@dataclass
class Evaluation:
    roles: ScoreCounts
    models: ScoreCounts
    pairs: list  # (sentence id, gold model or None, chosen answer or None)

    @property
    def role_report(self):
        return metrics(self.roles)

    @property
    def model_report(self):
        return metrics(self.models)


def count_roles(frames, gold_frames):
    """Tally role-level and model-level counts over a whole corpus.

    ``frames`` are the system answers; ``gold_frames`` may include entries with
    ``model=None`` marking sentences that have no gold model. Within a
    sentence, answers of the gold model are compared with that gold frame;
    leftover gold and answer models are paired in name order (a model-level
    INC whose roles are still compared), and whatever remains is MIS or SPU.
    """
    gold_by_sentence = defaultdict(list)
    seen = set()
    for g in gold_frames:
        key = (g.sentence_id, g.model)
        if key in seen:
            raise ValueError(f"duplicate gold frame for {g.sentence_id} {g.model}")
        seen.add(key)
        gold_by_sentence[g.sentence_id]  # registers NOMODEL sentences too
        if g.model is not None:
            gold_by_sentence[g.sentence_id].append(g)

    answers_by_sentence = defaultdict(lambda: defaultdict(list))
    for frame in frames:
        answers_by_sentence[frame.sentence_id][frame.model].append(frame)

    roles = ScoreCounts()
    models = ScoreCounts()
    pairs = []
    for sid in sorted(set(gold_by_sentence) | set(answers_by_sentence), key=natural_key):
        golds = {g.model: g for g in gold_by_sentence.get(sid, [])}
        answered = answers_by_sentence.get(sid, {})
        matched = sorted(set(golds) & set(answered))
        gold_left = sorted(set(golds) - set(answered))
        answer_left = sorted(set(answered) - set(golds))

        pairing = [(m, m) for m in matched] + list(zip(gold_left, answer_left))
        n_inc = min(len(gold_left), len(answer_left))
        models = models + ScoreCounts(len(matched), n_inc,
                                      len(gold_left) - n_inc, len(answer_left) - n_inc)

        for gold_model, answer_model in pairing:
            gold = golds[gold_model]
            chosen = align_response(answered[answer_model], gold)
            roles = roles + compare_fills(chosen.fills, gold.fills)
            pairs.append((sid, gold_model, chosen))
        for gold_model in gold_left[n_inc:]:
            gold = golds[gold_model]
            roles = roles + ScoreCounts(MIS=len(_scored_fills(gold.fills)))
            pairs.append((sid, gold_model, None))
        for answer_model in answer_left[n_inc:]:
            # spurious model: its first (preferred) instantiation stands for it
            chosen = answered[answer_model][0]
            roles = roles + ScoreCounts(SPU=len(_scored_fills(chosen.fills)))
            pairs.append((sid, None, chosen))
    return Evaluation(roles, models, pairs)


def natural_key(text):
    """Sort key that orders embedded integers numerically (s2 before s10)."""
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", text)]


# -- report ---------------------------------------------------------------------

def format_report(report, title):
    c = report.counts
    f = report.F
    rows = [
        ("COR", "INC", "MIS", "SPU", "POS"),
        (c.COR, c.INC, c.MIS, c.SPU, c.POS),
        ("ACT", "PRE", "REC", "UND", "OVG"),
        (c.ACT, report.PRE, report.REC, report.UND, report.OVG),
        ("SUB", "ERR", "P&R", "2P&R", "P&2R"),
        (report.SUB, report.ERR, f[1.0], f[2.0], f[0.5]),
    ]

    def cell(value):
        if isinstance(value, float):
            return f"{value:.4f}"
        return str(value)

    width = 8
    rule = "+" + "+".join("-" * width for _ in range(5)) + "+"
    lines = [f"== {title} ==", rule]
    for row in rows:
        lines.append("|" + "|".join(cell(v).center(width) for v in row) + "|")
        lines.append(rule)
    lines.append(f"COUNTS cor={c.COR} inc={c.INC} mis={c.MIS} spu={c.SPU} pos={c.POS} act={c.ACT}")
    for name, value in report.as_dict().items():
        lines.append(f"METRIC {name}={value:.4f}")
    if report.undefined:
        lines.append("UNDEFINED " + " ".join(sorted(report.undefined)))
    return "\n".join(lines) + "\n"
