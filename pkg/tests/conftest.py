"""Shared fixtures: golden corpus access and randomized instance generators.

Corpus hashes below were computed before the library existed, with
`openssl dgst -sha256 -binary | basenc --base64url`, and are frozen here;
the corpus files on disk are named by those hashes.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from statenet import content as typed
from statenet.format import Statement, hash_bytes

CORPUS_DIR = Path(__file__).parent / "corpus"

# fixture name -> oracle-pinned content hash
CORPUS_HASHES = {
    "sign_pdf": "5rMSms8d0xPieom7erVnHKFj2UykehiWIc0mmH48h5c",
    "plain_inline": "c-ZV9gqB1O1jkW39QAnRLMVVt7X4BLIqj-ptuJeAEtM",
    "plain_block": "38dismcwbUU2qjkcPFYpKN6dryTaKk2KZzE3AYh5h8w",
    "org_verification": "wYgI-PU0XbRdMnQI4oHbEPv58k9GhWNGCya6rvxg00M",
    "person_verification": "1J07YfZXSbTRozJCqV3jNfR5gZ-2EGT6w_Tk91xixiQ",
    "poll": "WNhmf8s8gWLZTroiK9AOoCB4I_i6AcEtNScwe8Yi8SI",
    "vote": "wAqwq2Qsf46ukqC9CQ79dz1oXsGr6l45wTtH3gCaTIk",
    "response": "yGWEbeUw_rmTLb3ymaU76bZSA7ZegJgbH1h5KlyE0UE",
    "bounty": "eWxv585rw6cweophN4Kp_PQSNj2SozF378CKKThYjvg",
    "boycott": "MjNGgrU2Uq6WCH0eNaq74KeOsNp4rqzvb-pbshqslsM",
    "dispute_authenticity": "S-jMBjxEyUHuhT_E_twBZqxxeyondP87h9m22S8qE1s",
    "dispute_content": "d7s9lATLB_EvvfaLrRIGTnOlTUx0c7iGBi79DCQQFe8",
    "rating": "3R7YqZR5doFCQyxhmHl2QPL61A9O_3FRN2WaooD7TwQ",
    "unknown_type": "3Bw6RjkJzcVk0wv5lLQ2KcWP7Mu3DHvUK9yXsgdOmdQ",
    "superseding": "nptBmhORoN7gj7k07f57RU-ABU8uzyzx_-zg1eaKAH8",
}

# SHA-256("") in URL-safe unpadded base64 (standard test vector).
EMPTY_INPUT_HASH = "47DEQpj8HBSa-_TImW-5JCeuQeRkm5NMpJWZG3hSuFU"


def corpus_text(name: str) -> str:
    return (CORPUS_DIR / f"{CORPUS_HASHES[name]}.txt").read_bytes().decode("utf-8")


@pytest.fixture(scope="session")
def corpus() -> dict[str, str]:
    return {name: corpus_text(name) for name in CORPUS_HASHES}


_WORDS = (
    "treaty sanctions accord protocol summit ministry council delegation "
    "climate radiative fisheries tariff embargo audit registry baseline "
    "Zusammenarbeit coopération 協定 соглашение naváho Ω"
).split()
_TRICKY = ["Time:", "Author:", "Type:", "Option 1:", "a:b", "x,y;z", "(draft)"]
_DOMAINS = [
    "alpha.example", "beta.example", "gamma.example", "delta.example",
    "council.example", "registry.example", "ministry.example.gov",
    "xn--bcher-kva.example", "a-b.c-d.example",
]
_BASE_TIME = datetime(2026, 1, 1, tzinfo=timezone.utc)


def random_value(rng: random.Random, tricky: bool = True) -> str:
    pool = _WORDS + (_TRICKY if tricky else [])
    return " ".join(rng.choice(pool) for _ in range(rng.randint(1, 6)))


def random_tag(rng: random.Random) -> str:
    return rng.choice(
        ["iaea", "sanctions", "climate", "trade", "urgent", "démarche", "第4回"]
    )


def random_time(rng: random.Random) -> datetime:
    return _BASE_TIME + timedelta(seconds=rng.randint(0, 3 * 365 * 24 * 3600))


def random_hash(rng: random.Random) -> str:
    return hash_bytes(rng.getrandbits(64).to_bytes(8, "big"))


def random_typed_content(rng: random.Random) -> typed.TypedContent:
    kind = rng.randrange(11)
    confidence = rng.choice(["0", "1", "0.5", "0.85", "0.99", "1.0", "0.07"])
    if kind == 0:
        return typed.OrganisationVerification(
            name=random_value(rng),
            country=random_value(rng),
            legal_form=rng.choice(["foundation", "ministry", "association", "GmbH"]),
            domain_owned=rng.choice(_DOMAINS),
            confidence=confidence,
        )
    if kind == 1:
        return typed.PersonVerification(
            name=random_value(rng),
            birth_date=f"{rng.randint(1930, 2005):04d}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}",
            birth_city=random_value(rng),
            birth_country=random_value(rng),
            domain_owned=rng.choice(_DOMAINS),
            confidence=confidence,
        )
    if kind == 2:
        return typed.SignPdf(description=random_value(rng), pdf_hash=random_hash(rng))
    if kind == 3:
        n_options = rng.randint(2, 5)
        options = []
        while len(options) < n_options:
            option = random_value(rng)
            if option not in options:
                options.append(option)
        return typed.Poll(
            voting_deadline=random_time(rng),
            question=random_value(rng) + "?",
            options=tuple(options),
            eligibility_description=random_value(rng),
        )
    if kind == 4:
        return typed.Vote(poll_hash=random_hash(rng), option=random_value(rng))
    if kind == 5:
        return typed.Response(
            statement_hash=random_hash(rng), response_text=random_value(rng)
        )
    if kind == 6:
        return typed.Bounty(
            action_description=random_value(rng),
            reward_description=random_value(rng),
            judge=random_value(rng) if rng.random() < 0.5 else None,
        )
    if kind == 7:
        return typed.Boycott(subject=random_value(rng), description=random_value(rng))
    if kind == 8:
        return typed.DisputeAuthenticity(statement_hash=random_hash(rng))
    if kind == 9:
        return typed.DisputeContent(
            statement_hash=random_hash(rng),
            description=random_value(rng) if rng.random() < 0.5 else None,
        )
    return typed.Rating(
        subject_name=random_value(rng),
        subject_domain=rng.choice(_DOMAINS),
        quality=rng.choice(["trustworthiness", "transparency", "punctuality"]),
        stars=rng.randint(1, 5),
        comment=random_value(rng) if rng.random() < 0.5 else None,
    )


def _plain_line(rng: random.Random) -> str:
    value = random_value(rng)
    while value.startswith("Type:"):  # a leading Type: line would not be plain
        value = random_value(rng)
    return value


def random_content(rng: random.Random) -> typed.TypedContent:
    roll = rng.random()
    if roll < 0.25:
        return typed.PlainContent(text=_plain_line(rng))
    if roll < 0.35:
        lines = [_plain_line(rng)] + [
            random_value(rng) for _ in range(rng.randint(1, 3))
        ]
        return typed.plain_content("\n".join(lines))
    if roll < 0.45:
        label = rng.choice(["Treaty ratification", "Budget pledge", "Recall notice"])
        lines = [f"\tType: {label}"] + [
            f"\t{random_value(rng, tricky=False)}" for _ in range(rng.randint(1, 3))
        ]
        return typed.UnknownContent(raw="\n".join(lines), type_label=label)
    return random_typed_content(rng)


def random_statement(rng: random.Random) -> Statement:
    return Statement(
        publishing_domain=rng.choice(_DOMAINS),
        author=random_value(rng),
        time=random_time(rng),
        content=typed.serialize_content(random_content(rng)),
        representative=random_value(rng) if rng.random() < 0.3 else None,
        tags=tuple(
            dict.fromkeys(random_tag(rng) for _ in range(rng.randint(1, 3)))
        )
        if rng.random() < 0.4
        else (),
        superseded_statement=random_hash(rng) if rng.random() < 0.2 else None,
    )
