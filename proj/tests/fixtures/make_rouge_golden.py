# Copyright 2026 The ogsum Authors.
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

"""Writes rouge_golden.tsv with scores from the rouge-score package.

Columns: candidate, reference, R-1 F1, R-2 F1, R-L F1.
"""

import os

from rouge_score import rouge_scorer


class WhitespaceTokenizer:
    def tokenize(self, text):
        out = []
        for tok in text.lower().split():
            tok = tok.rstrip(".")
            if tok:
                out.append(tok)
        return out


PAIRS = [
    ("the cat sat on the mat", "the cat sat on the mat"),
    ("a b c d", "a b x y"),
    ("one two three", "four five six"),
    ("a b c", "a x c"),
    ("Security Council extends mandate of UN mission in Georgia",
     "UN extends Georgia mission mandate"),
    ("police arrest two men after robbery in city centre .",
     "two men arrested after city centre robbery"),
    ("oil prices rise on supply fears", "oil prices fall as supply fears ease"),
    ("the the the the", "the cat"),
    ("cat the", "the cat the cat"),
    ("shares in bank fall sharply", "Bank shares fall sharply."),
    ("new york stocks close higher", "New York stocks close lower on Friday"),
    ("minister says talks will resume next week",
     "talks won't resume says minister"),
    ("x", "x y z"),
    ("storm hits coast , thousands flee", "thousands flee as storm hits coast"),
    ("a a b b a a", "a b a b a b"),
    ("government unveils budget plan", "government unveils new budget plan for schools"),
    ("Israel surges ahead with West Bank road", "Israel presses ahead with West Bank barrier"),
    ("rain delays final match", "final match delayed by rain ."),
    ("company reports record profit in third quarter",
     "record third quarter profit for company"),
    ("u.s. envoy arrives in cairo", "U.S. envoy arrives in Cairo for talks"),
    ("a b c d e f g h", "h g f e d c b a"),
    ("prices rise prices rise", "prices rise"),
    ("election results due on monday", "Monday election results expected"),
    ("court rejects appeal by former leader", "former leader loses appeal in court"),
    ("mayor welcomes new rail link", "new rail link opens ."),
]


def main():
    scorer = rouge_scorer.RougeScorer(
        ["rouge1", "rouge2", "rougeL"], tokenizer=WhitespaceTokenizer())
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "rouge_golden.tsv")
    with open(path, "w", encoding="utf-8") as f:
        for cand, ref in PAIRS:
            s = scorer.score(ref, cand)
            f.write("%s\t%s\t%.6f\t%.6f\t%.6f\n" % (
                cand, ref, s["rouge1"].fmeasure, s["rouge2"].fmeasure,
                s["rougeL"].fmeasure))


if __name__ == "__main__":
    main()
