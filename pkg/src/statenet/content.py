"""Structured payloads nested under ``Statement content:``.

Twelve typed payloads plus plain text and unknown-type passthrough. Typed
payloads are tab-nested field lines with a leading ``Type:`` discriminator;
each type has one frozen canonical field order (see FORMAT.md), because the
content hash covers exact bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime, timezone

from . import format as fmt
from .errors import InvariantViolation, MalformedTypedContent

ORGANISATION_VERIFICATION_SENTENCE = (
    "We verified the following information about an organisation."
)

_CONFIDENCE_RE = re.compile(r"^(?:0(?:\.\d{1,2})?|1(?:\.0{1,2})?)$")
_STARS_RE = re.compile(r"^[1-5]$")
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_TYPE_PREFIX = "Type: "


def _check(label: str, name: str, value: str) -> str:
    try:
        return fmt._check_value(name, value, MalformedTypedContent)
    except MalformedTypedContent as exc:
        raise MalformedTypedContent(f"{label}: {exc}") from None


def _check_hash(label: str, name: str, value: str) -> str:
    if not fmt.is_content_hash(value):
        raise MalformedTypedContent(f"{label}: {name} is not a content hash: {value!r}")
    return value


def _check_domain(label: str, name: str, value: str) -> str:
    if not fmt.is_valid_domain(value):
        raise MalformedTypedContent(f"{label}: {name} is not a valid domain: {value!r}")
    return value


def _check_confidence(label: str, value: str) -> str:
    if not isinstance(value, str) or not _CONFIDENCE_RE.match(value):
        raise MalformedTypedContent(
            f"{label}: confidence must be a decimal in [0.0-1.0] with at most "
            f"two fraction digits, got {value!r}"
        )
    return value


@dataclass(frozen=True)
class PlainContent:
    """Untyped content, preserved verbatim (tab prefixes included)."""

    text: str


@dataclass(frozen=True)
class UnknownContent:
    """Content with an unrecognized ``Type:`` label; relayed byte-exact."""

    raw: str
    type_label: str


@dataclass(frozen=True)
class OrganisationVerification:
    name: str
    country: str
    legal_form: str
    domain_owned: str
    confidence: str  # decimal literal, preserved to keep hashes stable

    TYPE_LABEL = "Organisation verification"

    @property
    def confidence_value(self) -> float:
        return float(self.confidence)


@dataclass(frozen=True)
class PersonVerification:
    name: str
    birth_date: str  # YYYY-MM-DD
    birth_city: str
    birth_country: str
    domain_owned: str
    confidence: str

    TYPE_LABEL = "Person verification"

    @property
    def confidence_value(self) -> float:
        return float(self.confidence)


@dataclass(frozen=True)
class SignPdf:
    description: str
    pdf_hash: str

    TYPE_LABEL = "Sign PDF"


@dataclass(frozen=True)
class Poll:
    voting_deadline: datetime
    question: str
    options: tuple[str, ...]
    eligibility_description: str

    TYPE_LABEL = "Poll"
    MAX_OPTIONS = 20


@dataclass(frozen=True)
class Vote:
    poll_hash: str
    option: str

    TYPE_LABEL = "Vote"


@dataclass(frozen=True)
class Response:
    statement_hash: str
    response_text: str

    TYPE_LABEL = "Response"


@dataclass(frozen=True)
class Bounty:
    action_description: str
    reward_description: str
    judge: str | None = None

    TYPE_LABEL = "Bounty"


@dataclass(frozen=True)
class Boycott:
    subject: str
    description: str

    TYPE_LABEL = "Boycott"


@dataclass(frozen=True)
class DisputeAuthenticity:
    statement_hash: str

    TYPE_LABEL = "Dispute statement authenticity"


@dataclass(frozen=True)
class DisputeContent:
    statement_hash: str
    description: str | None = None

    TYPE_LABEL = "Dispute statement content"


@dataclass(frozen=True)
class Rating:
    subject_name: str
    subject_domain: str
    quality: str
    stars: int
    comment: str | None = None

    TYPE_LABEL = "Rating"


TypedContent = (
    PlainContent
    | UnknownContent
    | OrganisationVerification
    | PersonVerification
    | SignPdf
    | Poll
    | Vote
    | Response
    | Bounty
    | Boycott
    | DisputeAuthenticity
    | DisputeContent
    | Rating
)


def _parse_flat(label: str, lines: list[str], sequence: tuple[tuple[str, bool], ...]) -> dict[str, str]:
    """Ordered field walk; optional fields may be omitted but never reordered."""
    values: dict[str, str] = {}
    index = 0
    for name, required in sequence:
        line = lines[index] if index < len(lines) else None
        prefix = f"{name}: "
        if line is not None and line.startswith(prefix):
            values[name] = _check(label, name, line[len(prefix):])
            index += 1
        elif line == f"{name}:":
            raise MalformedTypedContent(f"{label}: field {name!r} has an empty value")
        elif required:
            raise MalformedTypedContent(
                f"{label}: missing required field {name!r}"
                + (f", found {line!r}" if line is not None else "")
            )
    if index != len(lines):
        raise MalformedTypedContent(f"{label}: unexpected line {lines[index]!r}")
    return values


def _parse_org_verification(lines: list[str]) -> OrganisationVerification:
    label = OrganisationVerification.TYPE_LABEL
    values = _parse_flat(
        label,
        lines,
        (
            ("Description", True),
            ("Name", True),
            ("Country", True),
            ("Legal form", True),
            ("Owner of the domain", True),
            ("Confidence", True),
        ),
    )
    if values["Description"] != ORGANISATION_VERIFICATION_SENTENCE:
        raise MalformedTypedContent(
            f"{label}: description must be the fixed sentence "
            f"{ORGANISATION_VERIFICATION_SENTENCE!r}"
        )
    return OrganisationVerification(
        name=values["Name"],
        country=values["Country"],
        legal_form=values["Legal form"],
        domain_owned=_check_domain(label, "owner domain", values["Owner of the domain"]),
        confidence=_check_confidence(label, values["Confidence"]),
    )


def _parse_person_verification(lines: list[str]) -> PersonVerification:
    label = PersonVerification.TYPE_LABEL
    values = _parse_flat(
        label,
        lines,
        (
            ("Name", True),
            ("Date of birth", True),
            ("City of birth", True),
            ("Country of birth", True),
            ("Owner of the domain", True),
            ("Confidence", True),
        ),
    )
    birth = values["Date of birth"]
    if not _DATE_RE.match(birth):
        raise MalformedTypedContent(f"{label}: date of birth must be YYYY-MM-DD, got {birth!r}")
    try:
        date.fromisoformat(birth)
    except ValueError as exc:
        raise MalformedTypedContent(f"{label}: invalid date of birth {birth!r}") from exc
    return PersonVerification(
        name=values["Name"],
        birth_date=birth,
        birth_city=values["City of birth"],
        birth_country=values["Country of birth"],
        domain_owned=_check_domain(label, "owner domain", values["Owner of the domain"]),
        confidence=_check_confidence(label, values["Confidence"]),
    )


def _parse_sign_pdf(lines: list[str]) -> SignPdf:
    label = SignPdf.TYPE_LABEL
    values = _parse_flat(label, lines, (("Description", True), ("PDF file hash", True)))
    return SignPdf(
        description=values["Description"],
        pdf_hash=_check_hash(label, "PDF file hash", values["PDF file hash"]),
    )


def _parse_poll(lines: list[str]) -> Poll:
    label = Poll.TYPE_LABEL
    index = 0

    def take(name: str) -> str:
        nonlocal index
        prefix = f"{name}: "
        if index >= len(lines) or not lines[index].startswith(prefix):
            found = lines[index] if index < len(lines) else None
            raise MalformedTypedContent(
                f"{label}: missing required field {name!r}"
                + (f", found {found!r}" if found is not None else "")
            )
        value = _check(label, name, lines[index][len(prefix):])
        index += 1
        return value

    try:
        deadline = fmt.parse_timestamp(take("Voting deadline"))
    except Exception as exc:
        raise MalformedTypedContent(f"{label}: {exc}") from exc
    question = take("Poll")

    options: list[str] = []
    while index < len(lines) and lines[index].startswith("Option "):
        expected = f"Option {len(options) + 1}: "
        if not lines[index].startswith(expected):
            raise MalformedTypedContent(
                f"{label}: options must be numbered contiguously from 1, "
                f"got {lines[index]!r} at position {len(options) + 1}"
            )
        options.append(_check(label, f"option {len(options) + 1}", lines[index][len(expected):]))
        index += 1
    if len(options) < 2:
        raise MalformedTypedContent(f"{label}: at least two options are required")
    if len(options) > Poll.MAX_OPTIONS:
        raise MalformedTypedContent(f"{label}: at most {Poll.MAX_OPTIONS} options are supported")
    if len(set(options)) != len(options):
        raise MalformedTypedContent(f"{label}: options must be distinct")

    if index >= len(lines) or lines[index] != "Who can vote:":
        found = lines[index] if index < len(lines) else None
        raise MalformedTypedContent(
            f"{label}: missing 'Who can vote:' block"
            + (f", found {found!r}" if found is not None else "")
        )
    index += 1
    prefix = "\tDescription: "
    if index >= len(lines) or not lines[index].startswith(prefix):
        raise MalformedTypedContent(f"{label}: eligibility requires a nested Description line")
    eligibility = _check(label, "eligibility description", lines[index][len(prefix):])
    index += 1
    if index != len(lines):
        raise MalformedTypedContent(f"{label}: unexpected line {lines[index]!r}")

    return Poll(
        voting_deadline=deadline,
        question=question,
        options=tuple(options),
        eligibility_description=eligibility,
    )


def _parse_vote(lines: list[str]) -> Vote:
    label = Vote.TYPE_LABEL
    values = _parse_flat(label, lines, (("Poll hash", True), ("Option", True)))
    return Vote(
        poll_hash=_check_hash(label, "poll hash", values["Poll hash"]),
        option=values["Option"],
    )


def _parse_response(lines: list[str]) -> Response:
    label = Response.TYPE_LABEL
    values = _parse_flat(label, lines, (("Statement hash", True), ("Response", True)))
    return Response(
        statement_hash=_check_hash(label, "statement hash", values["Statement hash"]),
        response_text=values["Response"],
    )


def _parse_bounty(lines: list[str]) -> Bounty:
    label = Bounty.TYPE_LABEL
    values = _parse_flat(
        label, lines, (("Action", True), ("Reward", True), ("Judge", False))
    )
    return Bounty(
        action_description=values["Action"],
        reward_description=values["Reward"],
        judge=values.get("Judge"),
    )


def _parse_boycott(lines: list[str]) -> Boycott:
    label = Boycott.TYPE_LABEL
    values = _parse_flat(label, lines, (("Subject", True), ("Description", True)))
    return Boycott(subject=values["Subject"], description=values["Description"])


def _parse_dispute_authenticity(lines: list[str]) -> DisputeAuthenticity:
    label = DisputeAuthenticity.TYPE_LABEL
    values = _parse_flat(label, lines, (("Statement hash", True),))
    return DisputeAuthenticity(
        statement_hash=_check_hash(label, "statement hash", values["Statement hash"])
    )


def _parse_dispute_content(lines: list[str]) -> DisputeContent:
    label = DisputeContent.TYPE_LABEL
    values = _parse_flat(
        label, lines, (("Statement hash", True), ("Description", False))
    )
    return DisputeContent(
        statement_hash=_check_hash(label, "statement hash", values["Statement hash"]),
        description=values.get("Description"),
    )


def _parse_rating(lines: list[str]) -> Rating:
    label = Rating.TYPE_LABEL
    values = _parse_flat(
        label,
        lines,
        (
            ("Name", True),
            ("Domain", True),
            ("Quality", True),
            ("Stars", True),
            ("Comment", False),
        ),
    )
    stars = values["Stars"]
    if not _STARS_RE.match(stars):
        raise MalformedTypedContent(f"{label}: stars must be an integer 1-5, got {stars!r}")
    return Rating(
        subject_name=values["Name"],
        subject_domain=_check_domain(label, "domain", values["Domain"]),
        quality=values["Quality"],
        stars=int(stars),
        comment=values.get("Comment"),
    )


_PARSERS = {
    OrganisationVerification.TYPE_LABEL: _parse_org_verification,
    PersonVerification.TYPE_LABEL: _parse_person_verification,
    SignPdf.TYPE_LABEL: _parse_sign_pdf,
    Poll.TYPE_LABEL: _parse_poll,
    Vote.TYPE_LABEL: _parse_vote,
    Response.TYPE_LABEL: _parse_response,
    Bounty.TYPE_LABEL: _parse_bounty,
    Boycott.TYPE_LABEL: _parse_boycott,
    DisputeAuthenticity.TYPE_LABEL: _parse_dispute_authenticity,
    DisputeContent.TYPE_LABEL: _parse_dispute_content,
    Rating.TYPE_LABEL: _parse_rating,
}

KNOWN_TYPE_LABELS = frozenset(_PARSERS)
PLAIN_KIND = "Plain"


def parse_content(raw: str) -> TypedContent:
    """Decode a raw content block into its typed representation.

    Known ``Type:`` labels are fully validated; unknown labels pass through
    byte-exact; content without a ``Type:`` line is plain text.
    """
    fmt._check_content(raw, MalformedTypedContent)
    if raw.startswith("\t"):
        inner = [line[1:] for line in raw.split("\n")]
        first = inner[0]
        if first.startswith(_TYPE_PREFIX):
            label = first[len(_TYPE_PREFIX):]
            parser = _PARSERS.get(label)
            if parser is None:
                return UnknownContent(raw=raw, type_label=label)
            for line in inner[1:]:
                if not line:
                    raise MalformedTypedContent(f"{label}: empty nested line")
            return parser(inner[1:])
        return PlainContent(text=raw)
    if raw.startswith(_TYPE_PREFIX):
        label = raw[len(_TYPE_PREFIX):]
        if label in _PARSERS:
            raise MalformedTypedContent(
                f"{label}: typed content must be tab-nested, not inline"
            )
        return UnknownContent(raw=raw, type_label=label)
    return PlainContent(text=raw)


def _field_lines(c: TypedContent) -> list[str]:
    if isinstance(c, OrganisationVerification):
        return [
            f"Description: {ORGANISATION_VERIFICATION_SENTENCE}",
            f"Name: {c.name}",
            f"Country: {c.country}",
            f"Legal form: {c.legal_form}",
            f"Owner of the domain: {c.domain_owned}",
            f"Confidence: {c.confidence}",
        ]
    if isinstance(c, PersonVerification):
        return [
            f"Name: {c.name}",
            f"Date of birth: {c.birth_date}",
            f"City of birth: {c.birth_city}",
            f"Country of birth: {c.birth_country}",
            f"Owner of the domain: {c.domain_owned}",
            f"Confidence: {c.confidence}",
        ]
    if isinstance(c, SignPdf):
        return [f"Description: {c.description}", f"PDF file hash: {c.pdf_hash}"]
    if isinstance(c, Poll):
        lines = [
            f"Voting deadline: {fmt.format_timestamp(c.voting_deadline)}",
            f"Poll: {c.question}",
        ]
        lines.extend(f"Option {i}: {option}" for i, option in enumerate(c.options, start=1))
        lines.append("Who can vote:")
        lines.append(f"\tDescription: {c.eligibility_description}")
        return lines
    if isinstance(c, Vote):
        return [f"Poll hash: {c.poll_hash}", f"Option: {c.option}"]
    if isinstance(c, Response):
        return [f"Statement hash: {c.statement_hash}", f"Response: {c.response_text}"]
    if isinstance(c, Bounty):
        lines = [f"Action: {c.action_description}", f"Reward: {c.reward_description}"]
        if c.judge is not None:
            lines.append(f"Judge: {c.judge}")
        return lines
    if isinstance(c, Boycott):
        return [f"Subject: {c.subject}", f"Description: {c.description}"]
    if isinstance(c, DisputeAuthenticity):
        return [f"Statement hash: {c.statement_hash}"]
    if isinstance(c, DisputeContent):
        lines = [f"Statement hash: {c.statement_hash}"]
        if c.description is not None:
            lines.append(f"Description: {c.description}")
        return lines
    if isinstance(c, Rating):
        lines = [
            f"Name: {c.subject_name}",
            f"Domain: {c.subject_domain}",
            f"Quality: {c.quality}",
            f"Stars: {c.stars}",
        ]
        if c.comment is not None:
            lines.append(f"Comment: {c.comment}")
        return lines
    raise InvariantViolation(f"not a typed content value: {c!r}")


def serialize_content(c: TypedContent) -> str:
    """Emit the canonical content block; parse_content(result) == c."""
    if isinstance(c, PlainContent):
        fmt._check_content(c.text, InvariantViolation)
        reparsed = parse_content(c.text)
        if not isinstance(reparsed, PlainContent):
            raise InvariantViolation("plain content must not carry a Type: line")
        return c.text
    if isinstance(c, UnknownContent):
        fmt._check_content(c.raw, InvariantViolation)
        if c.type_label in KNOWN_TYPE_LABELS:
            raise InvariantViolation(f"{c.type_label!r} is a known type, not an unknown one")
        reparsed = parse_content(c.raw)
        if reparsed != c:
            raise InvariantViolation("unknown content raw text does not match its label")
        return c.raw
    raw = "\n".join(
        "\t" + line for line in [f"Type: {c.TYPE_LABEL}", *_field_lines(c)]
    )
    try:
        reparsed = parse_content(raw)
    except MalformedTypedContent as exc:
        raise InvariantViolation(f"content value violates its grammar: {exc}") from exc
    if reparsed != c:
        raise InvariantViolation("content value does not survive a round-trip")
    return raw


def content_kind(c: TypedContent) -> str:
    """Stable type label for storage, filtering, and display."""
    if isinstance(c, PlainContent):
        return PLAIN_KIND
    if isinstance(c, UnknownContent):
        return c.type_label
    return c.TYPE_LABEL


def content_fields(c: TypedContent) -> dict:
    """JSON-ready field mapping for feeds and UIs."""
    if isinstance(c, PlainContent):
        return {"text": c.text}
    if isinstance(c, UnknownContent):
        return {"raw": c.raw, "type_label": c.type_label}
    if isinstance(c, Poll):
        return {
            "voting_deadline": fmt.format_timestamp(c.voting_deadline),
            "question": c.question,
            "options": list(c.options),
            "eligibility_description": c.eligibility_description,
        }
    out = {}
    for name, value in vars(c).items():
        out[name] = value
    return out


def _coerce_confidence(value) -> str:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return repr(round(float(value), 2))
    return str(value)


def content_from_fields(kind: str, fields: dict) -> TypedContent:
    """Build typed content from a flat field mapping (CLI flags, API JSON).

    Raises MalformedTypedContent on unknown kinds, missing or extra keys, and
    any per-type validation failure (reported by serialize/parse round-trip).
    """
    def need(*names: str) -> list:
        missing = [n for n in names if fields.get(n) in (None, "")]
        if missing:
            raise MalformedTypedContent(f"{kind}: missing fields {missing}")
        return [fields[n] for n in names]

    def optional(name: str):
        value = fields.get(name)
        return None if value in (None, "") else str(value)

    if kind in ("Plain", PLAIN_KIND):
        kind = "plain"
    known = {
        "plain": {"text"},
        OrganisationVerification.TYPE_LABEL: {
            "name", "country", "legal_form", "domain_owned", "confidence",
        },
        PersonVerification.TYPE_LABEL: {
            "name", "birth_date", "birth_city", "birth_country", "domain_owned", "confidence",
        },
        SignPdf.TYPE_LABEL: {"description", "pdf_hash"},
        Poll.TYPE_LABEL: {
            "voting_deadline", "question", "options", "eligibility_description",
        },
        Vote.TYPE_LABEL: {"poll_hash", "option"},
        Response.TYPE_LABEL: {"statement_hash", "response_text"},
        Bounty.TYPE_LABEL: {"action_description", "reward_description", "judge"},
        Boycott.TYPE_LABEL: {"subject", "description"},
        DisputeAuthenticity.TYPE_LABEL: {"statement_hash"},
        DisputeContent.TYPE_LABEL: {"statement_hash", "description"},
        Rating.TYPE_LABEL: {"subject_name", "subject_domain", "quality", "stars", "comment"},
    }
    allowed = known.get(kind)
    if allowed is None:
        raise MalformedTypedContent(f"unknown statement type {kind!r}")
    extras = set(fields) - allowed
    if extras:
        raise MalformedTypedContent(f"{kind}: unexpected fields {sorted(extras)}")

    try:
        if kind == "plain":
            (text,) = need("text")
            value: TypedContent = plain_content(str(text))
        elif kind == OrganisationVerification.TYPE_LABEL:
            name, country, legal_form, domain_owned, confidence = need(
                "name", "country", "legal_form", "domain_owned", "confidence"
            )
            value = OrganisationVerification(
                name=str(name), country=str(country), legal_form=str(legal_form),
                domain_owned=fmt.normalize_domain(str(domain_owned)),
                confidence=_coerce_confidence(confidence),
            )
        elif kind == PersonVerification.TYPE_LABEL:
            name, birth_date, birth_city, birth_country, domain_owned, confidence = need(
                "name", "birth_date", "birth_city", "birth_country", "domain_owned", "confidence"
            )
            value = PersonVerification(
                name=str(name), birth_date=str(birth_date), birth_city=str(birth_city),
                birth_country=str(birth_country),
                domain_owned=fmt.normalize_domain(str(domain_owned)),
                confidence=_coerce_confidence(confidence),
            )
        elif kind == SignPdf.TYPE_LABEL:
            description, pdf_hash = need("description", "pdf_hash")
            value = SignPdf(description=str(description), pdf_hash=str(pdf_hash))
        elif kind == Poll.TYPE_LABEL:
            deadline, question, options, eligibility = need(
                "voting_deadline", "question", "options", "eligibility_description"
            )
            if isinstance(options, str):
                options = [o.strip() for o in options.split("|") if o.strip()]
            value = Poll(
                voting_deadline=fmt.parse_timestamp(str(deadline)),
                question=str(question),
                options=tuple(str(o) for o in options),
                eligibility_description=str(eligibility),
            )
        elif kind == Vote.TYPE_LABEL:
            poll_hash, option = need("poll_hash", "option")
            value = Vote(poll_hash=str(poll_hash), option=str(option))
        elif kind == Response.TYPE_LABEL:
            statement_hash, response_text = need("statement_hash", "response_text")
            value = Response(statement_hash=str(statement_hash), response_text=str(response_text))
        elif kind == Bounty.TYPE_LABEL:
            action, reward = need("action_description", "reward_description")
            value = Bounty(
                action_description=str(action), reward_description=str(reward),
                judge=optional("judge"),
            )
        elif kind == Boycott.TYPE_LABEL:
            subject, description = need("subject", "description")
            value = Boycott(subject=str(subject), description=str(description))
        elif kind == DisputeAuthenticity.TYPE_LABEL:
            (statement_hash,) = need("statement_hash")
            value = DisputeAuthenticity(statement_hash=str(statement_hash))
        elif kind == DisputeContent.TYPE_LABEL:
            (statement_hash,) = need("statement_hash")
            value = DisputeContent(
                statement_hash=str(statement_hash), description=optional("description")
            )
        else:
            subject_name, subject_domain, quality, stars = need(
                "subject_name", "subject_domain", "quality", "stars"
            )
            try:
                stars_int = int(str(stars))
            except ValueError as exc:
                raise MalformedTypedContent(f"{kind}: stars must be an integer") from exc
            value = Rating(
                subject_name=str(subject_name),
                subject_domain=fmt.normalize_domain(str(subject_domain)),
                quality=str(quality), stars=stars_int, comment=optional("comment"),
            )
        serialize_content(value)  # validate through the canonical grammar
    except MalformedTypedContent:
        raise
    except Exception as exc:
        raise MalformedTypedContent(f"{kind}: {exc}") from exc
    return value


def plain_content(text: str) -> PlainContent:
    """Wrap logical text as plain content, tab-nesting multi-line input."""
    if "\n" in text or text.startswith("\t"):
        raw = "\n".join("\t" + line for line in text.split("\n"))
    else:
        raw = text
    return PlainContent(text=raw)


def build_statement(
    *,
    domain: str,
    author: str,
    content: TypedContent | str,
    time: datetime | None = None,
    tags: tuple[str, ...] = (),
    representative: str | None = None,
    superseded: str | None = None,
) -> str:
    """Compose a canonical statement text from logical parts."""
    if isinstance(content, str):
        content = plain_content(content)
    moment = time if time is not None else datetime.now(timezone.utc).replace(microsecond=0)
    statement = fmt.Statement(
        publishing_domain=fmt.normalize_domain(domain),
        author=author,
        time=moment,
        content=serialize_content(content),
        representative=representative,
        tags=tuple(tags),
        superseded_statement=superseded,
    )
    return fmt.serialize_statement(statement)
