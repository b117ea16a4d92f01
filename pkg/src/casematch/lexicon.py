"""Hierarchical verbal subcategorization lexicon.

Verb classes form a tree. Each class lists meaning components by numeric id;
a subclass may override individual fields of an inherited component or add
new components. Verb entries override fields by role name, and alternation
schemes (``basic``, ``pasiva_perifrastica``, ...) apply a last layer of
overrides and drops when a verb is expanded into matchable patterns.

Precedence, least to most specific: class < subclass < verb < scheme.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InputError

UNSPECIFIED = "x"
NO_PREP = "none"
EVENT_ROLE = "event"
CATEGORIES = ("NP", "PP", "VP", "AdvP", "AdjP", "S-other")

# Fields a COMPONENT line may set; OVERRIDE lines may set all but role.
COMPONENT_FIELDS = ("role", "syntax", "prep", "sem", "agree", "opt", "coindex")
REQUIRED_FIELDS = ("role", "syntax", "prep", "sem", "agree", "opt")
OVERRIDE_FIELDS = ("syntax", "prep", "sem", "agree", "opt")

_IDENT = re.compile(r"^[A-Za-z_][\w\-]*$")
_GUARD = re.compile(r"^guarded\((.*)\)$")
# '#' also separates lemma and sense, so a comment must start a line or follow whitespace
_COMMENT = re.compile(r"(^|\s)#.*$")


@dataclass(frozen=True)
class PrepositionGroup:
    name: str
    members: frozenset


@dataclass(frozen=True)
class ComponentSpec:
    """One fully resolved meaning component.

    ``syntax`` is ``"NP"``, ``"PP"``, :data:`UNSPECIFIED`, or a tuple of
    ``(semantic_label, category)`` guards tried in order against the
    candidate chunk's label. ``prep`` is a group name, :data:`UNSPECIFIED`
    or :data:`NO_PREP`.
    """

    id: int
    role: str
    syntax: object
    prep: str
    sem: str
    agree: bool
    opt: bool
    coindex: int | None = None

    def expected_category(self, label, ontology):
        """Resolve guarded syntax against ``label``; None when no guard applies."""
        if not isinstance(self.syntax, tuple):
            return self.syntax
        for guard, category in self.syntax:
            if ontology.subsumes(guard, label):
                return category
        return None

    def as_fields(self):
        return {
            "role": self.role,
            "syntax": self.syntax,
            "prep": self.prep,
            "sem": self.sem,
            "agree": self.agree,
            "opt": self.opt,
            "coindex": self.coindex,
        }


@dataclass
class ModelScheme:
    name: str
    owner: str
    overrides: dict = field(default_factory=dict)  # role -> {field: value}
    drops: frozenset = frozenset()
    line: int | None = field(default=None, compare=False)


@dataclass
class VerbClass:
    name: str
    parent: str | None = None
    components: dict = field(default_factory=dict)  # id -> {field: value}, possibly partial
    line: int | None = field(default=None, compare=False)


@dataclass
class VerbEntry:
    lemma: str
    sense: str
    cls: str
    overrides: dict = field(default_factory=dict)  # role -> {field: value}
    schemes: tuple | None = None
    line: int | None = field(default=None, compare=False)

    @property
    def key(self):
        return f"{self.lemma}#{self.sense}"


@dataclass(frozen=True)
class Slot:
    """A matchable position in a pattern.

    Co-indexed components share one slot, so ``roles`` may hold two names.
    The verb slot has ``spec=None`` and the single role ``event``.
    """

    roles: tuple
    spec: ComponentSpec | None

    @property
    def is_verb(self):
        return self.spec is None

    @property
    def optional(self):
        return self.spec is not None and self.spec.opt


@dataclass(frozen=True)
class Pattern:
    lemma: str
    sense: str
    scheme: str
    slots: tuple

    @property
    def name(self):
        return f"{self.lemma}#{self.sense}.{self.scheme}"

    @property
    def verb_position(self):
        for i, slot in enumerate(self.slots):
            if slot.is_verb:
                return i
        raise ValueError("pattern without verb slot")

    def __len__(self):
        return len(self.slots)

    @property
    def roles(self):
        return [role for slot in self.slots for role in slot.roles]

    def slot_for(self, role):
        for slot in self.slots:
            if role in slot.roles:
                return slot
        raise KeyError(role)


def _merge(base, extra):
    merged = dict(base)
    merged.update(extra)
    return merged


class Lexicon:
    """Validated lexicon. Immutable by convention after construction."""

    def __init__(self, prep_groups, classes, schemes, verbs, ontology, filename=None):
        self.prep_groups = dict(prep_groups)
        self.classes = dict(classes)
        self.schemes = list(schemes)
        self.verbs = dict(verbs)
        self.ontology = ontology
        self.filename = filename
        self._resolved_class = {}
        self._validate()

    def __repr__(self):
        return (f"Lexicon(classes={len(self.classes)}, verbs={len(self.verbs)}, "
                f"prep_groups={len(self.prep_groups)})")

    def _err(self, message, line=None, token=None):
        return InputError(message, self.filename, line, token)

    # -- validation -----------------------------------------------------

    def _validate(self):
        for name, cls in self.classes.items():
            if cls.parent is not None and cls.parent not in self.classes:
                raise self._err("unknown parent class", cls.line, cls.parent)
            seen = set()
            node = cls
            while node is not None:
                if node.name in seen:
                    raise self._err("cyclic class parentage", cls.line, name)
                seen.add(node.name)
                node = self.classes.get(node.parent) if node.parent else None
            for fields in cls.components.values():
                self._check_fields(fields, cls.line)
        for name in self.classes:
            self._check_class(name)
        for scheme in self.schemes:
            self._check_scheme(scheme)
        for verb in self.verbs.values():
            self._check_verb(verb)

    def _check_fields(self, fields, line):
        for key, value in fields.items():
            if key == "prep" and value not in (UNSPECIFIED, NO_PREP) \
                    and value not in self.prep_groups:
                raise self._err("unknown preposition group", line, value)
            if key == "sem" and value not in self.ontology:
                raise self._err("unknown semantic label", line, value)
            if key == "syntax" and isinstance(value, tuple):
                for label, _ in value:
                    if label not in self.ontology:
                        raise self._err("unknown semantic label in guard", line, label)

    def _check_class(self, name):
        cls = self.classes[name]
        parent_ids = set(self.resolve_class(cls.parent)) if cls.parent else set()
        for cid, fields in cls.components.items():
            if cid not in parent_ids:
                missing = [f for f in REQUIRED_FIELDS if f not in fields]
                if missing:
                    raise self._err(f"component {cid} missing fields {missing}",
                                    cls.line, cid)
        resolved = self.resolve_class(name)
        roles = {}
        for cid, fields in resolved.items():
            if fields["role"] in roles:
                raise self._err("duplicate role in class", cls.line, fields["role"])
            roles[fields["role"]] = cid
            if fields["role"] == EVENT_ROLE:
                raise self._err("'event' is reserved for the verb slot", cls.line, cid)
            target = fields.get("coindex")
            if target is not None:
                if target not in resolved or target == cid:
                    raise self._err("co-index to missing id", cls.line, target)
                if resolved[target].get("coindex") is not None:
                    raise self._err("co-index chains are not supported", cls.line, target)

    def _check_scheme(self, scheme):
        if scheme.owner not in self.classes:
            raise self._err("scheme for unknown class", scheme.line, scheme.owner)
        roles = self.class_roles(scheme.owner)
        for role in scheme.drops:
            if role not in roles:
                raise self._err("DROP of unknown role", scheme.line, role)
        for role, fields in scheme.overrides.items():
            if role not in roles:
                raise self._err("OVERRIDE of unknown role", scheme.line, role)
            if role in scheme.drops:
                raise self._err("scheme override references a dropped role",
                                scheme.line, role)
            self._check_fields(fields, scheme.line)

    def _check_verb(self, verb):
        if verb.cls not in self.classes:
            raise self._err("unknown class", verb.line, verb.cls)
        roles = self.class_roles(verb.cls)
        for role, fields in verb.overrides.items():
            if role not in roles:
                raise self._err("OVERRIDE of unknown role", verb.line, role)
            self._check_fields(fields, verb.line)
        if verb.schemes is not None:
            available = self.schemes_for_class(verb.cls)
            for name in verb.schemes:
                if name not in available:
                    raise self._err("scheme not available for class", verb.line, name)

    # -- inheritance ----------------------------------------------------

    def class_chain(self, name):
        """Class names from the root down to ``name``."""
        chain = []
        while name is not None:
            chain.append(name)
            name = self.classes[name].parent
        return chain[::-1]

    def resolve_class(self, name):
        """Field dicts per component id after merging the class chain."""
        if name not in self._resolved_class:
            resolved = {}
            for cname in self.class_chain(name):
                for cid, fields in self.classes[cname].components.items():
                    resolved[cid] = _merge(resolved.get(cid, {}), fields)
            self._resolved_class[name] = resolved
        return {cid: dict(fields) for cid, fields in self._resolved_class[name].items()}

    def class_roles(self, name):
        return {fields["role"]: cid for cid, fields in self.resolve_class(name).items()}

    def schemes_for_class(self, name):
        """Schemes visible from ``name``; a subclass scheme shadows a same-named ancestor one."""
        visible = {}
        chain = self.class_chain(name)
        for cname in chain:
            for scheme in self.schemes:
                if scheme.owner == cname:
                    visible[scheme.name] = scheme
        return visible

    def senses(self, lemma):
        return [v for v in self.verbs.values() if v.lemma == lemma]

    @property
    def roles(self):
        vocab = {EVENT_ROLE}
        for name in self.classes:
            vocab.update(self.class_roles(name))
        return vocab

    def patterns_for(self, lemma):
        patterns = []
        for verb in sorted(self.senses(lemma), key=lambda v: v.key):
            patterns.extend(expand_patterns(verb, self))
        return patterns


def _to_spec(cid, fields):
    return ComponentSpec(
        id=cid,
        role=fields["role"],
        syntax=fields["syntax"],
        prep=fields["prep"],
        sem=fields["sem"],
        agree=fields["agree"],
        opt=fields["opt"],
        coindex=fields.get("coindex"),
    )


def resolve_entry(verb, lex):
    """Merge a verb's class chain and its own overrides into concrete specs.

    Returns a dict ``id -> ComponentSpec`` in ascending id order.
    """
    resolved = lex.resolve_class(verb.cls)
    roles = {fields["role"]: cid for cid, fields in resolved.items()}
    for role, fields in verb.overrides.items():
        cid = roles[role]
        resolved[cid] = _merge(resolved[cid], fields)
    return {cid: _to_spec(cid, resolved[cid]) for cid in sorted(resolved)}


def _apply_scheme(specs, scheme):
    out = {}
    for cid, spec in specs.items():
        if spec.role in scheme.drops:
            continue
        fields = spec.as_fields()
        fields.update(scheme.overrides.get(spec.role, {}))
        out[cid] = _to_spec(cid, fields)
    # a co-index whose partner was dropped no longer binds anything
    for cid, spec in list(out.items()):
        if spec.coindex is not None and spec.coindex not in out:
            fields = spec.as_fields()
            fields["coindex"] = None
            out[cid] = _to_spec(cid, fields)
    return out


def _build_slots(specs):
    merged = {}
    for cid, spec in specs.items():
        if spec.coindex is None:
            merged.setdefault(cid, [spec])
    for cid, spec in specs.items():
        if spec.coindex is not None:
            merged[spec.coindex].append(spec)
    slots = []
    for cid in sorted(merged):
        group = merged[cid]
        roles = tuple(s.role for s in sorted(group, key=lambda s: s.id))
        position = min(s.id for s in group)
        slots.append((position, Slot(roles=roles, spec=group[0])))
    slots.sort(key=lambda item: item[0])
    verb_slot = Slot(roles=(EVENT_ROLE,), spec=None)
    at = sum(1 for position, _ in slots if position <= 1)
    ordered = [slot for _, slot in slots]
    ordered.insert(at, verb_slot)
    return tuple(ordered)


def expand_patterns(verb, lex):
    """One :class:`Pattern` per scheme applicable to ``verb``."""
    specs = resolve_entry(verb, lex)
    available = lex.schemes_for_class(verb.cls)
    names = sorted(available) if verb.schemes is None else list(verb.schemes)
    patterns = []
    for name in names:
        scheme = available[name]
        realized = _apply_scheme(specs, scheme)
        patterns.append(Pattern(verb.lemma, verb.sense, name, _build_slots(realized)))
    for pattern in patterns:
        for slot in pattern.slots:
            if slot.spec is not None and slot.spec.sem not in lex.ontology:
                raise InputError("pattern semantics outside ontology", lex.filename,
                                 verb.line, slot.spec.sem)
    return patterns


# -- file format ------------------------------------------------------------

def _parse_bool(value, filename, lineno):
    if value == "yes":
        return True
    if value == "no":
        return False
    raise InputError("expected yes/no", filename, lineno, value)


def _parse_syntax(value, filename, lineno):
    if value in ("NP", "PP", UNSPECIFIED):
        return value
    match = _GUARD.match(value)
    if not match:
        raise InputError("bad syntax value", filename, lineno, value)
    guards = []
    for part in match.group(1).split(";"):
        if ":" not in part:
            raise InputError("bad guard", filename, lineno, part)
        label, category = part.split(":", 1)
        if category not in CATEGORIES and category != UNSPECIFIED:
            raise InputError("unknown category in guard", filename, lineno, category)
        guards.append((label, category))
    if not guards:
        raise InputError("empty guard list", filename, lineno, value)
    return tuple(guards)


def _parse_field(key, value, filename, lineno):
    if key == "role":
        if not _IDENT.match(value):
            raise InputError("bad role name", filename, lineno, value)
        return value
    if key == "syntax":
        return _parse_syntax(value, filename, lineno)
    if key in ("agree", "opt"):
        return _parse_bool(value, filename, lineno)
    if key == "coindex":
        if not value.isdigit() or int(value) <= 0:
            raise InputError("bad co-index", filename, lineno, value)
        return int(value)
    return value


def _parse_assignments(tokens, allowed, filename, lineno):
    fields = {}
    for token in tokens:
        if "=" not in token:
            raise InputError("expected key=value", filename, lineno, token)
        key, value = token.split("=", 1)
        if key not in allowed:
            raise InputError("unknown key", filename, lineno, key)
        if key in fields:
            raise InputError("repeated key", filename, lineno, key)
        fields[key] = _parse_field(key, value, filename, lineno)
    return fields


def load_lexicon(source, ontology, filename=None):
    """Parse the line-oriented lexicon format and validate all references."""
    prep_groups = {}
    classes = {}
    schemes = []
    verbs = {}
    block = None  # the VerbClass / ModelScheme / VerbEntry that indented lines extend

    for lineno, raw in enumerate(source.splitlines(), 1):
        text = _COMMENT.sub("", raw)
        if not text.strip():
            continue
        indented = text[0] in " \t"
        tokens = text.split()
        head = tokens[0]

        if not indented:
            block = None
            if head == "PREPGROUP":
                rest = text.split(None, 1)[1] if len(tokens) > 1 else ""
                if "=" not in rest:
                    raise InputError("expected PREPGROUP <name> = <preps>", filename, lineno, text.strip())
                name, members = rest.split("=", 1)
                name = name.strip()
                preps = frozenset(m.strip().lower() for m in members.split(",") if m.strip())
                if not _IDENT.match(name):
                    raise InputError("bad group name", filename, lineno, name)
                if name in (UNSPECIFIED, NO_PREP):
                    raise InputError("reserved group name", filename, lineno, name)
                if not preps:
                    raise InputError("empty preposition group", filename, lineno, name)
                if name in prep_groups:
                    raise InputError("duplicate preposition group", filename, lineno, name)
                prep_groups[name] = PrepositionGroup(name, preps)
            elif head == "CLASS":
                if len(tokens) == 2:
                    parent = None
                elif len(tokens) == 4 and tokens[2] == "EXTENDS":
                    parent = tokens[3]
                else:
                    raise InputError("expected CLASS <name> [EXTENDS <parent>]",
                                     filename, lineno, text.strip())
                name = tokens[1]
                if name in classes:
                    raise InputError("duplicate class", filename, lineno, name)
                block = classes[name] = VerbClass(name, parent, line=lineno)
            elif head == "SCHEME":
                if len(tokens) != 2 or "." not in tokens[1]:
                    raise InputError("expected SCHEME <class>.<name>", filename, lineno, text.strip())
                owner, name = tokens[1].split(".", 1)
                if any(s.owner == owner and s.name == name for s in schemes):
                    raise InputError("duplicate scheme", filename, lineno, tokens[1])
                block = ModelScheme(name, owner, line=lineno)
                schemes.append(block)
            elif head == "VERB":
                if len(tokens) != 4 or tokens[2] != "CLASS" or "#" not in tokens[1]:
                    raise InputError("expected VERB <lemma>#<sense> CLASS <class>",
                                     filename, lineno, text.strip())
                lemma, sense = tokens[1].split("#", 1)
                if not lemma or not sense:
                    raise InputError("bad verb key", filename, lineno, tokens[1])
                block = VerbEntry(lemma, sense, tokens[3], line=lineno)
                if block.key in verbs:
                    raise InputError("duplicate verb sense", filename, lineno, block.key)
                verbs[block.key] = block
            else:
                raise InputError("unknown directive", filename, lineno, head)
            continue

        if block is None:
            raise InputError("indented line outside a block", filename, lineno, head)
        if head == "COMPONENT" and isinstance(block, VerbClass):
            if len(tokens) < 2 or not tokens[1].isdigit() or int(tokens[1]) <= 0:
                raise InputError("expected COMPONENT <id>", filename, lineno, text.strip())
            cid = int(tokens[1])
            if cid in block.components:
                raise InputError("duplicate component id", filename, lineno, cid)
            block.components[cid] = _parse_assignments(tokens[2:], COMPONENT_FIELDS, filename, lineno)
        elif head == "OVERRIDE" and isinstance(block, (ModelScheme, VerbEntry)):
            if len(tokens) < 3:
                raise InputError("expected OVERRIDE <role> <field>=<value>...", filename, lineno, text.strip())
            role = tokens[1]
            fields = _parse_assignments(tokens[2:], OVERRIDE_FIELDS, filename, lineno)
            block.overrides[role] = _merge(block.overrides.get(role, {}), fields)
        elif head == "DROP" and isinstance(block, ModelScheme):
            if len(tokens) < 2:
                raise InputError("expected DROP <role>...", filename, lineno, text.strip())
            block.drops = block.drops | frozenset(tokens[1:])
        elif head == "SCHEMES" and isinstance(block, VerbEntry):
            names = tuple(n for n in "".join(tokens[1:]).split(",") if n)
            if not names:
                raise InputError("empty SCHEMES list", filename, lineno, text.strip())
            block.schemes = (block.schemes or ()) + names
        else:
            raise InputError("unexpected line in block", filename, lineno, head)

    return Lexicon(prep_groups, classes, schemes, verbs, ontology, filename=filename)

