#!/usr/bin/env python3
"""Simulate a user clicking through services and print how their interest
profile and recommendations evolve."""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from egovsearch.catalog import ingest
from egovsearch.profile import InteractionEvent, empty_profile, record_event, recommend

CLICKS = ["svc-evisa", "svc-tamdid-tashira", "svc-franchise-info", "svc-evisa"]


def main() -> int:
    catalog = ingest((ROOT / "fixtures" / "services.json").read_text("utf-8"))
    profile = empty_profile("demo-user")
    for ts, sid in enumerate(CLICKS):
        event = InteractionEvent(user="demo-user", timestamp=ts, kind="click", service_id=sid)
        profile = record_event(profile, event, catalog)
        print(f"\nafter click #{ts + 1} on {sid}:")
        for cid, weight in sorted(profile.interests.items(), key=lambda kv: -kv[1]):
            print(f"    interest {cid:35s} {weight:.3f}")
        recs = recommend(profile, catalog, k=3)
        print(f"    recommendations: {recs}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
