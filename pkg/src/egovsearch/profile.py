"""User profiles: interaction traceability, interest weights, recommendations.

A profile is an append-only journal of interaction events plus a cached
fold of that journal into interest weights over concepts and sectors. The
journal is the source of truth: replaying it from an empty profile must
reproduce the fold exactly, which is what makes the on-disk format (one
JSON-lines file per user) safe to cache from.

The fold rule on a click bumps the clicked service's concepts and sector
by eta (capped at 1.0) and decays every other entry by the decay factor;
query events are logged but change no weights. Repeatedly clicking the
same service therefore drives its concepts monotonically toward 1.0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping
from urllib.parse import quote, unquote

from .catalog import Catalog, ServiceRecord
from .errors import InvalidEvent, ParseError, UnknownServiceId

EVENT_QUERY = "query"
EVENT_CLICK = "click"

DEFAULT_ETA = 0.1
DEFAULT_DECAY = 0.99

# Interest weights live on a fixed decimal grid: repeated eta bumps land on
# exact values (ten 0.1 clicks give exactly 1.0) and journal replay folds to
# bit-identical state everywhere.
_GRID_DECIMALS = 9


def _snap(value: float) -> float:
    return round(value, _GRID_DECIMALS)


@dataclass(frozen=True)
class InteractionEvent:
    user: str
    timestamp: int  # UTC seconds
    kind: str  # "query" | "click"
    language: str | None = None
    query: str | None = None
    service_id: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in (EVENT_QUERY, EVENT_CLICK):
            raise InvalidEvent(f"unknown event kind {self.kind!r}")
        if self.kind == EVENT_CLICK and not self.service_id:
            raise InvalidEvent("click events need a service_id")
        if not self.user:
            raise InvalidEvent("events need a user id")


@dataclass(frozen=True)
class UserProfile:
    user: str
    preferred_language: str | None = None
    interests: Mapping[str, float] = field(default_factory=dict)
    sector_interests: Mapping[str, float] = field(default_factory=dict)
    events: tuple[InteractionEvent, ...] = ()

    @property
    def clicked_services(self) -> frozenset[str]:
        return frozenset(e.service_id for e in self.events if e.kind == EVENT_CLICK and e.service_id)

    def is_empty(self) -> bool:
        return not self.interests and not self.sector_interests


def empty_profile(user: str) -> UserProfile:
    return UserProfile(user=user)


def _fold_click(
    interests: dict[str, float],
    sector_interests: dict[str, float],
    record: ServiceRecord,
    eta: float,
    decay: float,
) -> None:
    bumped_concepts = set(record.concepts)
    for cid in interests:
        if cid not in bumped_concepts:
            interests[cid] = _snap(interests[cid] * decay)
    for cid in sorted(bumped_concepts):
        interests[cid] = min(1.0, _snap(interests.get(cid, 0.0) + eta))

    bumped_sector = record.sector if record.sector else None
    for sector in sector_interests:
        if sector != bumped_sector:
            sector_interests[sector] = _snap(sector_interests[sector] * decay)
    if bumped_sector is not None:
        sector_interests[bumped_sector] = min(1.0, _snap(sector_interests.get(bumped_sector, 0.0) + eta))


def record_event(
    profile: UserProfile,
    event: InteractionEvent,
    catalog: Catalog,
    eta: float = DEFAULT_ETA,
    decay: float = DEFAULT_DECAY,
) -> UserProfile:
    """Append one event and fold it into the interest weights.

    Click events must reference an existing service; timestamps must not go
    backwards within one user's journal.
    """
    if event.user != profile.user:
        raise InvalidEvent(f"event user {event.user!r} does not match profile user {profile.user!r}")
    if profile.events and event.timestamp < profile.events[-1].timestamp:
        raise InvalidEvent(
            f"timestamp {event.timestamp} is before the journal head {profile.events[-1].timestamp}"
        )

    interests = dict(profile.interests)
    sector_interests = dict(profile.sector_interests)
    if event.kind == EVENT_CLICK:
        record = catalog.get(event.service_id or "")
        if record is None:
            raise UnknownServiceId(f"click on unknown service {event.service_id!r}")
        _fold_click(interests, sector_interests, record, eta, decay)

    return UserProfile(
        user=profile.user,
        preferred_language=event.language or profile.preferred_language,
        interests=interests,
        sector_interests=sector_interests,
        events=profile.events + (event,),
    )


def replay(user: str, events: Iterable[InteractionEvent], catalog: Catalog,
           eta: float = DEFAULT_ETA, decay: float = DEFAULT_DECAY) -> UserProfile:
    """Rebuild a profile by folding its journal from scratch.

    Replay is tolerant where live recording is strict: a click whose
    service has since left the catalog keeps its journal line but no longer
    moves any weights.
    """
    profile = empty_profile(user)
    for event in events:
        try:
            profile = record_event(profile, event, catalog, eta=eta, decay=decay)
        except UnknownServiceId:
            profile = replace(profile, events=profile.events + (event,))
    return profile


def interest(profile: UserProfile, service: ServiceRecord | str, catalog: Catalog) -> float:
    """Max of the service's annotated-concept interests and its sector
    interest; 0.0 for an empty profile or an unknown service."""
    record = catalog.get(service) if isinstance(service, str) else service
    if record is None:
        return 0.0
    best = 0.0
    for cid in record.concepts:
        best = max(best, profile.interests.get(cid, 0.0))
    if record.sector:
        best = max(best, profile.sector_interests.get(record.sector, 0.0))
    return best


def recommend(profile: UserProfile, catalog: Catalog, index=None, k: int = 10) -> list[str]:
    """Services with positive interest the user has not clicked, by
    interest descending then id ascending, truncated to k.

    The index parameter is accepted for call-site symmetry with search and
    is not consulted; interest needs only the catalog.
    """
    del index
    if k <= 0 or profile.is_empty():
        return []
    clicked = profile.clicked_services
    scored = []
    for sid in sorted(catalog.services):
        if sid in clicked:
            continue
        value = interest(profile, sid, catalog)
        if value > 0.0:
            scored.append((-value, sid))
    scored.sort()
    return [sid for _, sid in scored[:k]]


# --- persistence -----------------------------------------------------------

def _event_to_obj(event: InteractionEvent) -> dict:
    obj = {"user": event.user, "ts": event.timestamp, "kind": event.kind}
    if event.language is not None:
        obj["language"] = event.language
    if event.query is not None:
        obj["query"] = event.query
    if event.service_id is not None:
        obj["service_id"] = event.service_id
    return obj


def _event_from_obj(obj: dict, where: str) -> InteractionEvent:
    try:
        return InteractionEvent(
            user=obj["user"],
            timestamp=int(obj["ts"]),
            kind=obj["kind"],
            language=obj.get("language"),
            query=obj.get("query"),
            service_id=obj.get("service_id"),
        )
    except (KeyError, TypeError, ValueError, InvalidEvent) as exc:
        raise ParseError(f"{where}: bad event: {exc}") from exc


class ProfileStore:
    """One JSON-lines journal per user under a directory.

    User ids are opaque tokens; they are percent-encoded into file names so
    any id is storable. The fold cache is derived and disposable: loading
    always replays the journal.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, user: str) -> Path:
        return self.directory / (quote(user, safe="") + ".jsonl")

    def users(self) -> list[str]:
        return sorted(unquote(p.name[: -len(".jsonl")]) for p in self.directory.glob("*.jsonl"))

    def append_event(self, event: InteractionEvent) -> None:
        with self.path_for(event.user).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(_event_to_obj(event), ensure_ascii=False) + "\n")

    def load_events(self, user: str) -> list[InteractionEvent]:
        path = self.path_for(user)
        if not path.exists():
            return []
        events = []
        with path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"{path}: line {line_no}: invalid JSON at column {exc.colno}: {exc.msg}",
                                     line=line_no, column=exc.colno) from exc
                events.append(_event_from_obj(obj, f"{path}: line {line_no}"))
        return events

    def load_user(self, user: str, catalog: Catalog) -> UserProfile:
        return replay(user, self.load_events(user), catalog)


def save_profiles(profiles: Mapping[str, UserProfile], directory: str | Path) -> None:
    """Write every profile's journal; the fold is re-derivable on load."""
    store = ProfileStore(directory)
    for user in sorted(profiles):
        with store.path_for(user).open("w", encoding="utf-8") as fh:
            for event in profiles[user].events:
                fh.write(json.dumps(_event_to_obj(event), ensure_ascii=False) + "\n")


def load_profiles(directory: str | Path, catalog: Catalog) -> dict[str, UserProfile]:
    store = ProfileStore(directory)
    return {user: store.load_user(user, catalog) for user in store.users()}
