#!/usr/bin/env python3
# Copyright 2026 The kgqa Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the toy knowledge graph and question sets under data/.

Gold answers are computed here with a small standalone executor so the C++
engine can be checked against them.
"""

import json
import pathlib
import sys

TYPE = "rdf:type"

ASTRONAUTS = [
    ("Yuri_Gagarin", "mission", "Vostok_Programme"),
    ("Valentina_Tereshkova", "mission", "Vostok_Programme"),
    ("Yuri_Gagarin", "birthPlace", "Klushino"),
    ("Valentina_Tereshkova", "birthPlace", "Maslennikovo"),
    ("Yuri_Gagarin", TYPE, "Astronaut"),
    ("Valentina_Tereshkova", TYPE, "Astronaut"),
    ("Yuri_Gagarin", "birthDate", '"1934-03-09"'),
]

SPACE = [
    ("Neil_Armstrong", "mission", "Apollo_11"),
    ("Buzz_Aldrin", "mission", "Apollo_11"),
    ("Michael_Collins", "mission", "Apollo_11"),
    ("Michael_Collins", "mission", "Gemini_10"),
    ("Apollo_11", "operator", "NASA"),
    ("Gemini_10", "operator", "NASA"),
    ("Neil_Armstrong", "birthPlace", "Wapakoneta"),
    ("Buzz_Aldrin", "birthPlace", "Glen_Ridge"),
    ("Michael_Collins", "birthPlace", "Rome"),
    ("Neil_Armstrong", TYPE, "Astronaut"),
    ("Buzz_Aldrin", TYPE, "Astronaut"),
    ("Michael_Collins", TYPE, "Astronaut"),
    ("Klushino", "country", "Soviet_Union"),
    ("Maslennikovo", "country", "Soviet_Union"),
    ("Wapakoneta", "country", "United_States"),
    ("Glen_Ridge", "country", "United_States"),
    ("Soviet_Union", TYPE, "Country"),
    ("United_States", TYPE, "Country"),
    ("Apollo_11", TYPE, "SpaceMission"),
    ("Gemini_10", TYPE, "SpaceMission"),
]

COUNTRIES = {
    "Germany": ("Berlin", "Berlin", "Euro", "German_language", ["Berlin", "Hamburg"]),
    "France": ("Paris", "Paris", "Euro", "French_language", ["Paris", "Lyon"]),
    "Italy": ("Rome", "Rome", "Euro", "Italian_language", ["Rome", "Milan"]),
    "Spain": ("Madrid", "Madrid", "Euro", "Spanish_language", ["Madrid"]),
    "Japan": ("Tokyo", "Tokyo", "Yen", "Japanese_language", ["Tokyo", "Osaka"]),
}


def country_triples():
    out = []
    for country, (capital, largest, currency, language, cities) in COUNTRIES.items():
        out += [
            (country, "capital", capital),
            (country, "largestCity", largest),
            (country, "currency", currency),
            (country, "officialLanguage", language),
            (country, TYPE, "Country"),
        ]
        for city in cities:
            out += [(city, "country", country), (city, TYPE, "City")]
    return out


FILMS = [
    ("John_Wick", "starring", "Keanu_Reeves"),
    ("John_Wick", "director", "Chad_Stahelski"),
    ("John_Wick", TYPE, "Film"),
    ("Hamlet_Stage_Production", "starring", "Keanu_Reeves"),
    ("Ode_to_Joy_Broadcast", "starring", "Keanu_Reeves"),
    ("Gravity", "starring", "Sandra_Bullock"),
    ("Gravity", "starring", "George_Clooney"),
    ("Gravity", "director", "Alfonso_Cuaron"),
    ("Gravity", TYPE, "Film"),
    ("Oceans_8", "starring", "Sandra_Bullock"),
    ("Oceans_8", TYPE, "Film"),
    ("Oceans_Eleven", "starring", "George_Clooney"),
    ("Oceans_Eleven", "starring", "Brad_Pitt"),
    ("Oceans_Eleven", "director", "Steven_Soderbergh"),
    ("Oceans_Eleven", TYPE, "Film"),
    ("ER", "starring", "George_Clooney"),
    ("ER", TYPE, "TelevisionShow"),
    ("Keanu_Reeves", "birthPlace", "Beirut"),
    ("Sandra_Bullock", "birthPlace", "Arlington"),
    ("George_Clooney", "birthPlace", "Lexington"),
    ("Brad_Pitt", "birthPlace", "Shawnee"),
    ("Chad_Stahelski", "birthPlace", "Marin_County"),
    ("Keanu_Reeves", TYPE, "Person"),
    ("Sandra_Bullock", TYPE, "Person"),
    ("George_Clooney", TYPE, "Person"),
    ("Brad_Pitt", TYPE, "Person"),
]

BOOKS = [
    ("The_Hobbit", "J_R_R_Tolkien", "Allen_and_Unwin", "Fantasy"),
    ("The_Lord_of_the_Rings", "J_R_R_Tolkien", "Allen_and_Unwin", "Fantasy"),
    ("Harry_Potter_and_the_Philosophers_Stone", "J_K_Rowling", "Bloomsbury", "Fantasy"),
    ("Nineteen_Eighty_Four", "George_Orwell", "Secker_and_Warburg", "Dystopian_fiction"),
    ("Animal_Farm", "George_Orwell", "Secker_and_Warburg", "Satire"),
    ("Pride_and_Prejudice", "Jane_Austen", "Thomas_Egerton", "Romance_novel"),
    ("Emma_Novel", "Jane_Austen", "John_Murray", "Romance_novel"),
]

SCHOOLS = [
    ("J_R_R_Tolkien", "Exeter_College_Oxford", "Oxford"),
    ("J_K_Rowling", "University_of_Exeter", "Exeter"),
    ("George_Orwell", "Eton_College", "Eton"),
]


def book_triples():
    out = []
    for book, author, publisher, genre in BOOKS:
        out += [
            (book, "author", author),
            (book, "publisher", publisher),
            (book, "genre", genre),
            (book, TYPE, "Book"),
        ]
    for writer, school, city in SCHOOLS:
        out += [
            (writer, "almaMater", school),
            (school, "city", city),
            (school, TYPE, "University"),
        ]
    for writer in sorted({b[1] for b in BOOKS}):
        out.append((writer, TYPE, "Writer"))
    return out


def unique(triples):
    seen, out = set(), []
    for t in triples:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


KG = unique(ASTRONAUTS + SPACE + country_triples() + FILMS + book_triples())


def step(node, hop):
    sign, pred = hop
    if node.startswith('"'):
        return set()
    if sign == "+":
        return {o for s, p, o in KG if s == node and p == pred and p != TYPE}
    return {s for s, p, o in KG if o == node and p == pred and p != TYPE}


def has_class(node, cls):
    return (node, TYPE, cls) in KG


def solve(entities, chain, intent, placement, cls):
    root = entities[0]
    second = entities[1] if len(entities) == 2 else None
    first = step(root, chain[0])
    if len(chain) == 1:
        if second is not None:
            bindings = {second} & first
        else:
            bindings = first
    else:
        bindings = set()
        for mid in first:
            if placement == "existential" and not has_class(mid, cls):
                continue
            ends = step(mid, chain[1])
            if second is not None:
                if second in ends:
                    bindings.add(mid)
            else:
                bindings |= ends
    if placement == "lambda":
        bindings = {b for b in bindings if has_class(b, cls)}
    if intent == "ask":
        return {"kind": "boolean", "value": bool(bindings)}
    if intent == "count":
        return {"kind": "count", "value": len(bindings)}
    return {"kind": "entity-set", "values": sorted(bindings)}


# (question, entities, chain, intent, placement, class)
PRETRAIN = [
    ("What is the birth place of the astronaut whose mission was the vostok programme?",
     ["Vostok_Programme"], [("-", "mission"), ("+", "birthPlace")], "set", "none", None),
    ("Where was Yuri Gagarin born?", ["Yuri_Gagarin"], [("+", "birthPlace")], "set", "none", None),
    ("Where was Neil Armstrong born?", ["Neil_Armstrong"], [("+", "birthPlace")], "set", "none", None),
    ("Which astronauts flew on Apollo 11?", ["Apollo_11"], [("-", "mission")], "set", "lambda", "Astronaut"),
    ("How many astronauts were part of the Apollo 11 mission?", ["Apollo_11"], [("-", "mission")],
     "count", "lambda", "Astronaut"),
    ("What was the mission of Valentina Tereshkova?", ["Valentina_Tereshkova"], [("+", "mission")],
     "set", "none", None),
    ("Who operated the mission of Buzz Aldrin?", ["Buzz_Aldrin"], [("+", "mission"), ("+", "operator")],
     "set", "none", None),
    ("Was Michael Collins born in Rome?", ["Michael_Collins", "Rome"], [("+", "birthPlace")],
     "ask", "none", None),
    ("Which astronaut was born in Rome?", ["Rome"], [("-", "birthPlace")], "set", "lambda", "Astronaut"),
    ("In which country was Yuri Gagarin born?", ["Yuri_Gagarin"], [("+", "birthPlace"), ("+", "country")],
     "set", "lambda", "Country"),
    ("Which country was Neil Armstrong born in?", ["Neil_Armstrong"], [("+", "birthPlace"), ("+", "country")],
     "set", "none", None),
    ("How many missions did Michael Collins fly?", ["Michael_Collins"], [("+", "mission")],
     "count", "none", None),
    ("Which astronaut of Apollo 11 was born in Wapakoneta?", ["Apollo_11", "Wapakoneta"],
     [("-", "mission"), ("+", "birthPlace")], "set", "none", None),
    ("Is NASA the operator of Apollo 11?", ["Apollo_11", "NASA"], [("+", "operator")], "ask", "none", None),
    ("Who were the crew mates of Buzz Aldrin?", ["Buzz_Aldrin"], [("+", "mission"), ("-", "mission")],
     "set", "none", None),
    ("What is the capital of Germany?", ["Germany"], [("+", "capital")], "set", "none", None),
    ("Is Berlin the capital of Germany?", ["Germany", "Berlin"], [("+", "capital")], "ask", "none", None),
    ("What is the capital of France?", ["France"], [("+", "capital")], "set", "none", None),
    ("What is the largest city of Japan?", ["Japan"], [("+", "largestCity")], "set", "none", None),
    ("Which currency is used in Italy?", ["Italy"], [("+", "currency")], "set", "none", None),
    ("How many countries use the euro?", ["Euro"], [("-", "currency")], "count", "lambda", "Country"),
    ("Which countries use the euro as currency?", ["Euro"], [("-", "currency")], "set", "lambda", "Country"),
    ("What is the official language of Spain?", ["Spain"], [("+", "officialLanguage")], "set", "none", None),
    ("Which cities are located in Germany?", ["Germany"], [("-", "country")], "set", "lambda", "City"),
    ("How many cities are in Italy?", ["Italy"], [("-", "country")], "count", "lambda", "City"),
    ("In which country is Lyon?", ["Lyon"], [("+", "country")], "set", "none", None),
    ("What is the currency of the country whose capital is Tokyo?", ["Tokyo"],
     [("-", "capital"), ("+", "currency")], "set", "none", None),
    ("What language is spoken in the country where Milan is located?", ["Milan"],
     [("+", "country"), ("+", "officialLanguage")], "set", "none", None),
    ("Is Paris the largest city of France?", ["France", "Paris"], [("+", "largestCity")], "ask", "none", None),
    ("Which country has Madrid as its capital?", ["Madrid"], [("-", "capital")], "set", "none", None),
    ("What is the capital of the country where Hamburg is located?", ["Hamburg"],
     [("+", "country"), ("+", "capital")], "set", "none", None),
    ("What is the largest city of the country whose official language is japanese?", ["Japanese_language"],
     [("-", "officialLanguage"), ("+", "largestCity")], "set", "none", None),
    ("How many languages are spoken in Spain?", ["Spain"], [("+", "officialLanguage")], "count", "none", None),
    ("Which country is Klushino in?", ["Klushino"], [("+", "country")], "set", "none", None),
    ("Which movies has Keanu Reeves starred in?", ["Keanu_Reeves"], [("-", "starring")],
     "set", "lambda", "Film"),
    ("Who directed John Wick?", ["John_Wick"], [("+", "director")], "set", "none", None),
    ("Who starred in Gravity?", ["Gravity"], [("+", "starring")], "set", "none", None),
    ("Where was Keanu Reeves born?", ["Keanu_Reeves"], [("+", "birthPlace")], "set", "none", None),
    ("How many films did Sandra Bullock star in?", ["Sandra_Bullock"], [("-", "starring")],
     "count", "lambda", "Film"),
    ("Who directed the films starring George Clooney?", ["George_Clooney"],
     [("-", "starring"), ("+", "director")], "set", "existential", "Film"),
    ("Is Keanu Reeves a star of John Wick?", ["John_Wick", "Keanu_Reeves"], [("+", "starring")],
     "ask", "none", None),
    ("Which actors were born in Beirut?", ["Beirut"], [("-", "birthPlace")], "set", "lambda", "Person"),
    ("Who starred in the films directed by Alfonso Cuaron?", ["Alfonso_Cuaron"],
     [("-", "director"), ("+", "starring")], "set", "none", None),
    ("Where were the actors of Oceans Eleven born?", ["Oceans_Eleven"],
     [("+", "starring"), ("+", "birthPlace")], "set", "none", None),
    ("In which films did George Clooney and Sandra Bullock both star?", ["George_Clooney", "Sandra_Bullock"],
     [("-", "starring"), ("+", "starring")], "set", "none", None),
    ("How many television shows has George Clooney starred in?", ["George_Clooney"], [("-", "starring")],
     "count", "lambda", "TelevisionShow"),
    ("Which TV shows did George Clooney star in?", ["George_Clooney"], [("-", "starring")],
     "set", "lambda", "TelevisionShow"),
    ("Who is the director of Gravity?", ["Gravity"], [("+", "director")], "set", "none", None),
    ("Where was the director of John Wick born?", ["John_Wick"], [("+", "director"), ("+", "birthPlace")],
     "set", "none", None),
    ("Who flew on the Vostok programme?", ["Vostok_Programme"], [("-", "mission")], "set", "none", None),
]

FINETUNE = [
    ("Who wrote The Hobbit?", ["The_Hobbit"], [("+", "author")], "set", "none", None),
    ("Who is the author of Animal Farm?", ["Animal_Farm"], [("+", "author")], "set", "none", None),
    ("Which books did Jane Austen write?", ["Jane_Austen"], [("-", "author")], "set", "lambda", "Book"),
    ("How many novels did George Orwell write?", ["George_Orwell"], [("-", "author")],
     "count", "lambda", "Book"),
    ("Who published Pride and Prejudice?", ["Pride_and_Prejudice"], [("+", "publisher")], "set", "none", None),
    ("Which publisher released Nineteen Eighty-Four?", ["Nineteen_Eighty_Four"], [("+", "publisher")],
     "set", "none", None),
    ("Where did George Orwell study?", ["George_Orwell"], [("+", "almaMater")], "set", "none", None),
    ("What is the alma mater of J. K. Rowling?", ["J_K_Rowling"], [("+", "almaMater")], "set", "none", None),
    ("In which city did Tolkien go to university?", ["J_R_R_Tolkien"], [("+", "almaMater"), ("+", "city")],
     "set", "none", None),
    ("What is the genre of The Lord of the Rings?", ["The_Lord_of_the_Rings"], [("+", "genre")],
     "set", "none", None),
    ("Which books were published by Allen and Unwin?", ["Allen_and_Unwin"], [("-", "publisher")],
     "set", "lambda", "Book"),
    ("Who published the books written by George Orwell?", ["George_Orwell"],
     [("-", "author"), ("+", "publisher")], "set", "none", None),
    ("Is Bloomsbury the publisher of Harry Potter and the Philosopher's Stone?",
     ["Harry_Potter_and_the_Philosophers_Stone", "Bloomsbury"], [("+", "publisher")], "ask", "none", None),
    ("What genres did Tolkien write in?", ["J_R_R_Tolkien"], [("-", "author"), ("+", "genre")],
     "set", "none", None),
    ("Which writers studied in Exeter?", ["Exeter"], [("-", "city"), ("-", "almaMater")], "set", "none", None),
    ("Which authors wrote fantasy books?", ["Fantasy"], [("-", "genre"), ("+", "author")], "set", "none", None),
    ("How many books did Bloomsbury publish?", ["Bloomsbury"], [("-", "publisher")], "count", "none", None),
    ("Who wrote Emma?", ["Emma_Novel"], [("+", "author")], "set", "none", None),
    ("Is Jane Austen the author of Emma?", ["Emma_Novel", "Jane_Austen"], [("+", "author")],
     "ask", "none", None),
    ("Which university is located in Oxford?", ["Oxford"], [("-", "city")], "set", "none", None),
]


def records(prefix, rows):
    out = []
    for i, (question, entities, chain, intent, placement, cls) in enumerate(rows):
        answers = solve(entities, chain, intent, placement, cls)
        if answers["kind"] == "entity-set" and not answers["values"]:
            sys.exit(f"empty gold answer for {question!r}")
        out.append({
            "id": f"{prefix}-{i:03d}",
            "question": question,
            "entities": entities,
            "gold_chain": [{"dir": d, "predicate": p} for d, p in chain],
            "intent": intent,
            "type_constraint": {"placement": placement, "class": cls},
            "gold_answers": answers,
        })
    return out


def write_kg(path, triples, header):
    with open(path, "w", encoding="utf-8") as f:
        if header:
            f.write(f"# {header}\n")
        for s, p, o in triples:
            f.write(f"{s}\t{p}\t{o}\n")


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True) + "\n")


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    assert len(KG) <= 200, len(KG)
    write_kg(out / "astronauts.tsv", ASTRONAUTS, None)
    write_kg(out / "toy_kg.tsv", KG, f"toy knowledge graph, {len(KG)} triples")
    write_jsonl(out / "toy_dataset.jsonl", records("toy", PRETRAIN))
    write_jsonl(out / "toy_finetune.jsonl", records("ft", FINETUNE))
    print(f"{len(KG)} triples, {len(PRETRAIN)} + {len(FINETUNE)} questions")


if __name__ == "__main__":
    main()
