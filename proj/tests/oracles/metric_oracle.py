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

"""Independent counting oracle for the worked metric examples.

Prints the values frozen into text_metrics_test.cc and acceptance_test.cc.
Uses plain list scans and itertools enumeration; shares no code with the
C++ engines.
"""

import itertools
import math


def ngrams(tokens, n):
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def clipped_overlap(cand, refs, n):
    cand_ngrams = ngrams(cand, n)
    total = 0
    for g in set(cand_ngrams):
        c = sum(1 for x in cand_ngrams if x == g)
        r = max(sum(1 for x in ngrams(ref, n) if x == g) for ref in refs)
        total += min(c, r)
    return total, len(cand_ngrams)


def f1(p, r):
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def rouge_n(cand, ref, n):
    overlap, cand_total = clipped_overlap(cand, [ref], n)
    ref_total = len(ngrams(ref, n))
    p = overlap / cand_total if cand_total else 0.0
    r = overlap / ref_total if ref_total else 0.0
    return p, r, f1(p, r)


def is_subsequence(sub, seq):
    it = iter(seq)
    return all(tok in it for tok in sub)


def lcs_exhaustive(a, b):
    best = 0
    for k in range(len(a) + 1):
        for idx in itertools.combinations(range(len(a)), k):
            if is_subsequence([a[i] for i in idx], b):
                best = max(best, k)
    return best


def bleu4(cand, refs):
    precisions = []
    for n in range(1, 5):
        overlap, total = clipped_overlap(cand, refs, n)
        if n == 1:
            if overlap == 0:
                return 0.0, [0.0]
            precisions.append(overlap / total)
        elif overlap == 0:
            precisions.append(1.0 / (total + 1))
        else:
            precisions.append(overlap / total)
    c = len(cand)
    r = min((abs(len(x) - c), len(x)) for x in refs)[1]
    bp = 1.0 if c >= r else math.exp(1 - r / c)
    return bp * math.exp(sum(math.log(p) for p in precisions) / 4), precisions


if __name__ == "__main__":
    cand = "the cat sat on the mat".split()
    ref = "the cat is on the mat".split()
    print("rouge1", rouge_n(cand, ref, 1))
    print("rouge2", rouge_n(cand, ref, 2))
    lcs = lcs_exhaustive(cand, ref)
    print("lcs", lcs, "rougeL_f1", f1(lcs / len(cand), lcs / len(ref)))
    score, p = bleu4(cand, [ref])
    print("bleu4(cat sat)", repr(score), p)
    score, p = bleu4("the the the the".split(), ["the cat".split()])
    print("bleu4(the x4)", repr(score), p)
    # Short candidate against longer reference exercises the brevity penalty.
    score, p = bleu4("the cat".split(), ["the cat sat on the mat".split()])
    print("bleu4(short)", repr(score), p)
    print("why mean", (0.2 + 0.4 + 0.6) / 3 * 100)
