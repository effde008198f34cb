# Copyright 2026 The dblpqa Authors.
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


import os
import pathlib

import pytest

import dblpqa

DATA = pathlib.Path(os.environ.get("DBLPQA_SOURCE_DIR", pathlib.Path(__file__).parents[2])) / "data"

BERT_TITLE = ("BERT: Pre-training of Deep Bidirectional Transformers for Language "
              "Understanding")
BERT_QUESTION = ("please enumerate the authors of '" + BERT_TITLE +
                 "' along with the venues where they have published other papers.")
FORMAL = "https://dblp.org/rec/conf/naacl/DevlinCLT19"
PREPRINT = "https://dblp.org/rec/journals/corr/abs-1810-04805"


@pytest.fixture(scope="module")
def vocab():
    return dblpqa.Vocabulary.from_manifest(str(DATA / "schema.manifest"))


@pytest.fixture(scope="module")
def engine():
    return dblpqa.Engine(DATA / "config.json")


def test_distance():
    assert dblpqa.token_levenshtein(["a", "b", "c"], ["a", "c"]) == 1
    assert dblpqa.token_edit_distance(["a", "b", "c"], ["a", "c"]) == pytest.approx(1 / 3)
    assert dblpqa.token_edit_distance([], []) == 0


def test_score():
    assert dblpqa.score(set(), set()) == (1.0, 1.0, 1.0)
    assert dblpqa.score({"a", "b"}, {"b", "c"}) == (0.5, 0.5, 0.5)
    assert dblpqa.score({"a"}, set()) == (0.0, 0.0, 0.0)


def test_logical_forms(vocab):
    lf = dblpqa.sparql_to_logical_form(
        "SELECT DISTINCT ?answer WHERE { <" + FORMAL + "> "
        "<https://dblp.org/rdf/schema#authoredBy> ?answer }", vocab)
    assert "<authoredBy>" in dblpqa.tokenize(lf)
    assert dblpqa.canonical_logical_form(lf, vocab) == lf


def test_errors_carry_codes(vocab):
    with pytest.raises(dblpqa.Error) as info:
        dblpqa.canonical_logical_form("SELECT ?x WHERE {", vocab)
    assert info.value.code == "UnbalancedDelimiter"


def test_session_flow(engine):
    s = engine.create(BERT_QUESTION)
    assert s["revision"] == 1
    assert s["mentions"][0]["candidates"][0]["uri"] == FORMAL
    col = s["answers"]["columns"].index("firstanswer")
    firsts = {row[col]["value"] for row in s["answers"]["rows"]}
    assert "https://dblp.org/pid/69/4618" in firsts

    s2 = engine.select_entity(s["id"], 0, 1)
    assert s2["revision"] == 2
    assert PREPRINT in s2["query"]["text"]
    assert engine.get(s["id"]) == s2

    with pytest.raises(dblpqa.Error) as info:
        engine.select_template(s["id"], 99)
    assert info.value.code == "IndexOutOfRange"
    with pytest.raises(dblpqa.Error) as info:
        engine.get("missing")
    assert info.value.code == "UnknownSession"
    assert len(engine.examples()) == 5


def test_gold_logical_form_eval(engine):
    report = engine.evaluate(DATA / "eval" / "gold50.json", mode="gold-lf")
    assert report["items"] == 50
    assert report["macro_f1"] == 1.0


def test_round_trip(vocab):
    r = dblpqa.round_trip(str(DATA / "synth" / "train.json"), vocab)
    assert r["items"] == 7000
    assert r["equal"] == r["parsed"]
    assert all(f["reason"] for f in r["failures"])
