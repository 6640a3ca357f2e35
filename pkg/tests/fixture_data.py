"""Reconstructed partner-selection fixture logs.

Context c1 holds six completed cases: three where partner selection was
done manually and three where it was done over email. Context c2 holds
five completed cases, two of which include a partner verification step
(below the support threshold of 3).
"""

import json

C1_ATTRS = {"market": "construction", "region": "PL", "demand": "high",
            "climate": "stable"}
C2_ATTRS = {"market": "renovation", "region": "DE", "demand": "low",
            "regulation": "strict"}
# shares 3 of c2's 4 attribute pairs -> Jaccard 3/4 = 0.75 against c2
C2_LIKE_ATTRS = {"market": "renovation", "region": "DE", "demand": "low"}

CONTEXTS = {"c1": C1_ATTRS, "c2": C2_ATTRS}


def _step(activity, participants=(), tool=None, data=(), mode=None):
    out = {"activity": activity, "participants": list(participants),
           "data": list(data)}
    if tool is not None:
        out["tool"] = tool
    if mode is not None:
        out["attrs"] = {"mode": mode}
    return out


def manual_steps():
    return [
        _step("partner search", ["P2"], "search engine",
              ["localization criteria"], "manual"),
        _step("partner selection", ["P2"], "search engine",
              ["localization criteria"], "manual"),
        _step("formulation of cooperation terms", ["P2"], "Z",
              ["Terms for X"], "manual"),
        _step("cooperation terms agreement", ["P2"], None,
              ["Organization X"], "manual"),
        _step("contract signing", ["P1"], None, ["Organization X"], "manual"),
    ]


def email_steps():
    return [
        _step("partner search", ["P2"], "search engine",
              ["localization criteria"], "email"),
        _step("partner selection", ["P2"], "search engine",
              ["localization criteria"], "email"),
        _step("partner verification", ["P3"], "P", ["past cooperation"], "email"),
        _step("offer inquiry", ["P1"], "Z", ["Organization Q"], "email"),
        _step("answer to inquiry", [], None, ["Organization Q"], "email"),
        _step("discussion", ["P1", "P3", "P4", "P5"], "K", [], "email"),
        _step("contract signing", ["P1"], "K",
              ["Organization Q", "Contract for Q"], "email"),
    ]


def c2_short_steps():
    return [
        _step("partner selection", ["P2"], "search engine",
              ["localization criteria"], "email"),
        _step("contract signing", ["P1"], "K", ["Organization X"], "email"),
    ]


def c2_verified_steps():
    return [
        _step("partner selection", ["P2"], "search engine",
              ["localization criteria"], "email"),
        _step("partner verification", ["P3"], "P", ["past cooperation"], "email"),
        _step("contract signing", ["P1"], "K", ["Organization X"], "email"),
    ]


def _case_events(case_id, context_id, steps, day):
    events = []
    for idx, step in enumerate(steps):
        e = dict(step)
        e["case_id"] = case_id
        e["seq"] = idx + 1
        e["external_context"] = context_id
        e["timestamp"] = f"2011-03-{day:02d}T{10 + idx:02d}:00:00Z"
        e["lifecycle"] = "case_end" if idx == len(steps) - 1 else "step"
        events.append(e)
    return events


def c1_events():
    events = []
    for n in (1, 2, 3):
        events.extend(_case_events(f"c1-manual-{n}", "c1", manual_steps(), n))
    for n in (1, 2, 3):
        events.extend(_case_events(f"c1-email-{n}", "c1", email_steps(), 10 + n))
    return events


def c2_events():
    events = []
    for n in (1, 2, 3):
        events.extend(_case_events(f"c2-short-{n}", "c2", c2_short_steps(), 20 + n))
    for n in (1, 2):
        events.extend(_case_events(f"c2-verified-{n}", "c2", c2_verified_steps(), 24 + n))
    return events


def jsonl(events):
    return "".join(json.dumps(e, sort_keys=True) + "\n" for e in events)


PATTERN_A = ("partner search", "partner selection")
PATTERN_B = ("partner search", "partner selection",
             "formulation of cooperation terms", "cooperation terms agreement",
             "contract signing")
PATTERN_C = ("partner search", "partner selection", "partner verification",
             "offer inquiry", "answer to inquiry", "discussion",
             "contract signing")
PATTERN_C2 = ("partner selection", "contract signing")
