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


"""DBLP question answering: logical forms, template retrieval and sessions."""

import json

from ._dblpqa import (
    Error,
    Vocabulary,
    canonical_logical_form,
    round_trip,
    score,
    sparql_to_logical_form,
    token_edit_distance,
    token_levenshtein,
    tokenize,
)

__all__ = [
    "Engine",
    "Error",
    "Vocabulary",
    "canonical_logical_form",
    "round_trip",
    "score",
    "sparql_to_logical_form",
    "token_edit_distance",
    "token_levenshtein",
    "tokenize",
]


class Engine:
    """Session manager over a pipeline built from a config file.

    Every call returns the session state as a dict.
    """

    def __init__(self, config):
        from ._dblpqa import _Engine

        self._engine = _Engine(str(config))

    @property
    def vocab(self):
        return self._engine.vocab

    def create(self, question):
        return json.loads(self._engine.create(question))

    def get(self, session_id):
        return json.loads(self._engine.get(session_id))

    def select_entity(self, session_id, mention_index, candidate_index):
        return json.loads(
            self._engine.select_entity(session_id, mention_index, candidate_index))

    def select_template(self, session_id, template_index):
        return json.loads(self._engine.select_template(session_id, template_index))

    def run_query(self, session_id, sparql):
        return json.loads(self._engine.run_query(session_id, sparql))

    def regenerate(self, session_id):
        return json.loads(self._engine.regenerate(session_id))

    def examples(self):
        return [{"text": t, "note": n} for t, n in self._engine.examples()]

    def evaluate(self, dataset, mode="full", parallelism=4):
        return json.loads(self._engine.evaluate(str(dataset), mode, parallelism))
