#!/usr/bin/env python3
# Copyright 2026 The fivew1h Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled fixtures under fixtures/.

Deterministic: running it twice gives byte-identical files. Standard library
only.

  python3 tools/make_fixture.py [--out fixtures]
"""

import argparse
import json
import os
import random
import re

FIRST = ["Maria", "Tom", "Aisha", "Daniel", "Keiko", "Pavel", "Grace", "Omar",
         "Lena", "Samuel", "Ines", "Victor", "Nadia", "Hugo", "Priya", "Felix"]
LAST = ["Lopez", "Hart", "Okafor", "Brennan", "Sato", "Novak", "Whitfield",
        "Haddad", "Berg", "Osei", "Moreau", "Castillo", "Rahman", "Lindqvist"]
PLACES = ["Leeds", "Cardiff", "Galway", "Aberdeen", "Bristol", "Lyon", "Porto",
          "Utrecht", "Ghent", "Dundee", "Malaga", "Turin", "Bergen", "Krakow"]
WEEKDAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday",
            "Saturday", "Sunday"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July",
          "August", "September", "October", "November", "December"]
OBJECTS = ["river bridge", "coastal railway", "children's hospital wing",
           "water treatment plant", "county archive", "ferry terminal",
           "power substation", "flood barrier", "research reactor",
           "harbour wall"]
# Per category: (event verb phrase, cause phrase, method phrase) templates.
EVENTS = {
    1: ("a landslide cut off the {obj} near the town centre",
        "because three days of heavy rain had saturated the hillside",
        "by sending volunteer crews with borrowed excavators"),
    2: ("an arson attack damaged the {obj} overnight",
        "because a local dispute over land rights had escalated",
        "by reviewing footage from nearby security cameras"),
    3: ("engineers unveiled a new sensor network for the {obj}",
        "because the old inspection schedule missed early cracks",
        "by fitting small wireless strain gauges along the structure"),
    4: ("health officials closed the {obj} after a safety review",
        "because inspectors found corroded supports under the deck",
        "by rerouting traffic through two temporary crossings"),
    5: ("conservation groups warned that the {obj} threatens a rare wetland",
        "because the expansion would drain the last breeding pools",
        "by filing a formal objection with the planning board"),
    6: ("prosecutors opened a fraud trial over the {obj} contract",
        "because invoices for the project had been inflated for years",
        "by presenting bank records and testimony from former staff"),
}
FILLER = ("the council residents officials said statement week plans local "
          "report public services spokesman community funding project city "
          "meeting review budget later agency earlier response issue region "
          "workers families school road area support schedule hours team "
          "following update decision measures concerns number several").split()
PARAPHRASE = {
    "what": "something happened involving the {obj}",
    "why": "it was caused by problems nobody expected",
    "how": "they handled it with help from the community",
}


def person(rng):
    return rng.choice(FIRST) + " " + rng.choice(LAST)


def filler_sentence(rng, n):
    words = [rng.choice(FILLER) for _ in range(n)]
    words[0] = words[0].capitalize()
    return " ".join(words) + " ."


def make_article(rng, index):
    category = index % 6 + 1
    obj = OBJECTS[index % len(OBJECTS)]
    place = rng.choice(PLACES)
    who1 = person(rng)
    who2 = person(rng)
    while who2 == who1:
        who2 = person(rng)
    day = rng.choice(WEEKDAYS)
    month = rng.choice(MONTHS)
    event, cause, method = (t.format(obj=obj) for t in EVENTS[category])
    when1 = "on " + day
    when2 = "early in " + month
    where1 = "in " + place
    what1 = event
    why1 = cause
    how1 = method
    lead = [
        "Residents were still counting the cost " + when1 + " after " + what1 + " .",
        "The incident happened " + where1 + " , according to " + who1 + " , who "
        "leads the regional response office .",
        "Officials said the trouble began " + why1 + " .",
        who2 + " told reporters that the situation was being managed " + how1 + " .",
        "A fuller account is expected " + when2 + " .",
    ]
    body = list(lead)
    count = sum(len(s.split()) for s in body)
    target = 550 + rng.randrange(0, 20)
    while count < target:
        n = rng.randrange(8, 15)
        s = filler_sentence(rng, n)
        body.insert(rng.randrange(1, len(body) + 1), s)
        count += n + 1
    text = " ".join(body)
    elements = {
        "what": [what1],
        "when": [when1, when2],
        "where": [where1],
        "why": [why1],
        "who": [who1, who2],
        "how": [how1],
    }
    return {
        "id": "cnndm-%04d" % (index + 1),
        "dataset": "cnndm",
        "category": category,
        "article": text,
        "elements": elements,
    }


def response_styles(rng, record, drop, paraphrase):
    """Returns a raw model answer for record, omitting elements in drop."""
    el = {}
    for key, spans in record["elements"].items():
        if key in drop:
            el[key] = []
        elif key in paraphrase:
            obj = OBJECTS[(int(record["id"][-4:]) - 1) % len(OBJECTS)]
            el[key] = [PARAPHRASE[key].format(obj=obj)]
        else:
            el[key] = list(spans)
    style = rng.randrange(4)
    if style == 0:
        return json.dumps(el, ensure_ascii=False)
    if style == 1:
        body = json.dumps(el, ensure_ascii=False, indent=2)
        return "Here is the extraction you asked for:\n```json\n" + body + "\n```\n"
    if style == 2:
        lines = []
        for key, spans in el.items():
            if spans:
                lines.append(key.capitalize() + ": " + ", ".join(spans))
        return "\n".join(lines) + "\n"
    parts = []
    for key, spans in el.items():
        if spans:
            parts.append('"%s": %s' % (key, json.dumps(spans, ensure_ascii=False)))
    return ",\n".join(parts) + "\n"


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


# Invalid responses planted per element in the 100-article replay run.
PLANTED_MISSING = {"what": 0, "when": 5, "where": 0, "why": 12, "who": 0, "how": 21}


def make_cnndm(out):
    rng = random.Random(20240517)
    records = [make_article(rng, i) for i in range(100)]
    write_jsonl(os.path.join(out, "cnndm_100.jsonl"), records)

    drops = {r["id"]: set() for r in records}
    ids = [r["id"] for r in records]
    for key, n in PLANTED_MISSING.items():
        for rid in rng.sample(ids, n):
            drops[rid].add(key)
    # Never drop everything from one answer; the parser would call it unparsed
    # only if no key survives, which the planted counts do not intend.
    for rid, d in drops.items():
        assert len(d) < 6, rid

    rows = []
    for r in records:
        paraphrase = {k for k in ("what", "why", "how") if rng.random() < 0.3}
        raw = response_styles(rng, r, drops[r["id"]], paraphrase)
        rows.append({"article_id": r["id"], "raw_text": raw})
    write_jsonl(os.path.join(out, "cnndm_100.replay.jsonl"), rows)

    valid = {k: 100 - n for k, n in PLANTED_MISSING.items()}
    with open(os.path.join(out, "cnndm_100.planted.json"), "w", encoding="utf-8") as f:
        json.dump({"articles": 100, "valid_counts": valid, "threshold": 80}, f, indent=2)
        f.write("\n")


# Colored source article. Colors map to elements.
COLORED_SOURCE = r"""There is no doubting the significance of \textcolor{red}{Sunday 's Tyne-Wear derby} now .\textcolor{red}{Debate has raged in Newcastle as to which their fans would rather see - a place \textcolor{blue}{in the Capital One Cup semi-final} or a first win over Sunderland in six attempts} . The majority sided with the former and a shot at a first domestic trophy \textcolor{yellow}{since 1955} .That dream , however , is dead . Alan Pardew and his players had talked of a ` massive ' week in their season . Well , it just got bigger .\textcolor{orange}{Massadio Haidara} consoles keeper \textcolor{orange}{Jak Alnwick} after a night to forget for Newcastle \textcolor{blue}{at Tottenham} .Newcastle 's defence reels as Spurs celebrate the final goal of their 4-0 defeat of the Toon \textcolor{yellow}{on Wednesday} .For Alan Pardew 's side , Sunday 's Tyne-Wear derby takes on a new dimension now they 're out of the cup .The manager had , in fairness , named just about the strongest XI available to him but it looked awfully weak against a Spurs side who were superior in every department .\textcolor{green}{The against-the-odds spirit that had inspired Newcastle 's 2-0 victory at Manchester City in the last round was missing} . It was , in the end , a rather timid surrender .Apart from Moussa Sissoko , the French battering ram who tried his best to barge his team forward , the visitors offered little .Sissoko 's compatriots Yoan Gouffran , Remy Cabella and Emmanuel Riviere -- a combined 20million worth of ` talent ' -- were passengers on a journey destined to end in defeat from the moment Jak Alnwick spilled \textcolor{orange}{Christian Eriksen} 's corner and \textcolor{orange}{Nabil Bentaleb} looped home the opening goal .A Newcastle fan , one of 4,200 supporters to travel down to London , gives his appraisal of the match .These shirtless lads do their best to lift their team having made the journey for the Capital One Cup loss .This has been a Newcastle team characterised by resistance and resilience , neither of which was in evidence .It was their second heavy loss \textcolor{blue}{in north London} \textcolor{yellow}{in five days} and such drubbings will do little for the team 's confidence come \textcolor{yellow}{Sunday} .\textcolor{orange}{Pardew} is the only manager in Newcastle 's history to lose three in a row against their North-East rivals and , with the mitigation of a cup run gone , he can ill afford another defeat \textcolor{yellow}{this weekend} .It was after Spurs ' fourth goal -- Roberto Soldado capitalising on another Alnwick spill -- that \textcolor{red}{Pardew turned his attention to the derby .Sunderland boss Gus Poyet issues instructions to his players on their way to a 1-1 draw with West Ham} .Jordi Gomez celebrates putting Sunderland 1-0 up from the penalty spot at home against West Ham .The thought of going into that game without Sissoko is a frightening one and , when he took what proved to be an innocuous knock to the knee , \textcolor{purple}{Pardew withdrew his star man almost immediately} .\textcolor{purple}{His effort was recognised by the 4,200 travelling fans and they sang until the last kick of an otherwise torrid evening} .Pardew acknowledged their support but will be in doubt about how fast such goodwill would evaporate should they fail to show against Gus Poyet 's side .The debate on radio phone-ins and in the local newspaper had been ` which of the two matches would you prefer to win ? ' Losing both was never an option .Pardew , of course , has done tremendously well to transform his own and Newcastle 's fortunes , but the mood can change quickly on Tyneside .After this humiliation , Pardew will be only too aware of Sunday 's significance ."""

COLOR_TO_ELEMENT = {"red": "what", "yellow": "when", "blue": "where",
                    "green": "why", "orange": "who", "purple": "how"}


def strip_colors(marked):
    """Returns (plain text, {element: [spans in document order]})."""
    plain = []
    stack = []  # (element, start offset in plain)
    spans = {k: [] for k in ("what", "when", "where", "why", "who", "how")}
    opener = re.compile(r"\\textcolor\{(\w+)\}\{")
    i = 0
    while i < len(marked):
        m = opener.match(marked, i)
        if m:
            stack.append((COLOR_TO_ELEMENT[m.group(1)], len("".join(plain))))
            i = m.end()
            continue
        c = marked[i]
        if c == "}" and stack:
            element, start = stack.pop()
            spans[element].append(("".join(plain)[start:], start))
            i += 1
            continue
        plain.append(c)
        i += 1
    text = "".join(plain)
    ordered = {k: [s for s, _ in sorted(v, key=lambda x: x[1])] for k, v in spans.items()}
    return text, ordered


GOLD_JSON_ANSWER = {
    "what": ["Debate has raged in Newcastle as to which their fans would rather see - a place in the Capital One Cup semi-final or a first win over Sunderland in six attempts . The majority sided with the former and a shot at a first domestic trophy since 1955 .That dream , however , is dead"],
    "when": ["on Wednesday, 1955"],
    "where": [" Newcastle, Tottenham, London"],
    "why": [" The majority sided with the former and a shot at a first domestic trophy since 1955 .That dream , however , is dead"],
    "who": ["Alan Pardew, Massadio Haidara, keeper Jak Alnwick, Newcastle, Moussa Sissoko, Yoan Gouffran, Remy Cabella, Emmanuel Riviere, Christian Eriksen, Nabil Bentaleb, Gus Poyet, Jordi Gomez"],
    "how": ["Well , it just got bigger .Massadio Haidara consoles keeper Jak Alnwick after a night to forget for Newcastle at Tottenham .Newcastle 's defence reels as Spurs celebrate the final goal of their 4-0 defeat of the Toon on Wednesday"],
}

KEY_LINE_ANSWER = (
    "When: Sunday, May 12\n"
    "Where: Tyne-Wear derby in Newcastle\n"
    "Why: To determine whether Newcastle would rather advance to the Capital One Cup semi-final or win over Sunderland\n"
    "Who: Alan Pardew (Newcastle manager), Moussa Sissoko (Newcastle player), Yoan Gouffran, Remy Cabella, Emmanuel Riviere (Newcastle players), Jak Alnwick (Newcastle goalkeeper), Christian Eriksen and Nabil Bentaleb (Spurs players), Roberto Soldado (Spurs player), Gus Poyet (Sunderland manager)\n"
    "How: Newcastle lost 4-0 to Spurs in the Capital One Cup, causing them to focus on their upcoming match against Sunderland\n"
)

ZERO_SHOT_KEY_LINE_ANSWER = (
    "What: The upcoming Tyne-Wear derby between Newcastle and Sunderland.\n"
    "When: Sunday (No specific date given)\n"
    "Where: Newcastle\n"
    "\"Why\": The significance of the Tyne-Wear derby has increased after Newcastle's loss in the Capital One Cup semi-final.\n"
    "Who: Newcastle fans, Manager Alan Pardew and his players, Sunderland team, Spurs side\n"
    "How: Newcastle lost against Spurs which resulted in their ousting from the Capital One Cup. This has increased the pressure on them for their upcoming match against Sunderland.\n"
)

QUOTED_KEY_ANSWER = (
    "\"what\": [\"Sunday 's Tyne-Wear derby takes on a new dimension now they 're out of the cup\", \"It was , in the end , a rather timid surrender\", \"The thought of going into that game without Sissoko is a frightening one\"], \n"
    "\"when\": [\"on Wednesday\", \"in five days\", \"this weekend\", \"Sunday\"],\n"
    "\"where\": [\"Newcastle\", \"at Tottenham\", \"in north London\"],\n"
    "\"why\": [\"Alan Pardew and his players had talked of a ` massive ' week in their season . Well , it just got bigger\"], \n"
    "\"who\": [\"Massadio Haidara \", \"Jak Alnwick\",\"Alan Pardew's side \",\"Moussa Sissoko \"],\n"
    "\"how\":[\"The manager had , in fairness , named just about the strongest XI available to him but it looked awfully weak against a Spurs side who were superior in every department\"]\n"
)


def make_sample_article(out):
    text, spans = strip_colors(COLORED_SOURCE)
    record = {"id": "sample-article", "dataset": "cnndm", "category": 6,
              "article": text, "elements": spans}
    write_jsonl(os.path.join(out, "sample_article.jsonl"), [record])
    all_valid = {k: True for k in spans}
    rows = [
        {"style": "gold_json", "raw_text": json.dumps(GOLD_JSON_ANSWER, ensure_ascii=False, indent=2),
         "expected_mode": "strict_json", "expected_valid": all_valid},
        {"style": "key_line_prose", "raw_text": KEY_LINE_ANSWER,
         "expected_mode": "key_line_fallback",
         "expected_valid": dict(all_valid, what=False)},
        {"style": "quoted_key_block", "raw_text": QUOTED_KEY_ANSWER,
         "expected_mode": "fenced_json", "expected_valid": all_valid},
        {"style": "zero_shot_key_line", "raw_text": ZERO_SHOT_KEY_LINE_ANSWER,
         "expected_mode": "key_line_fallback", "expected_valid": all_valid},
    ]
    for row in rows:
        row["article_id"] = "sample-article"
    write_jsonl(os.path.join(out, "sample_responses.jsonl"), rows)


def make_misc(out):
    endpoint = {"name": "local-server", "base_url": "http://127.0.0.1:8000/v1",
                "model": "vicuna-13b-5w1h", "api_key_env": "FIVEW1H_API_KEY"}
    with open(os.path.join(out, "endpoint.example.json"), "w", encoding="utf-8") as f:
        json.dump(endpoint, f, indent=2)
        f.write("\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "fixtures"))
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    make_cnndm(args.out)
    make_sample_article(args.out)
    make_misc(args.out)


if __name__ == "__main__":
    main()
