#!/usr/bin/env python3
# Three ways to deal with the risk peak at N = n, evaluated on identical
# data streams so the comparisons are paired:
#
#   1. ridge regularization (helps),
#   2. appending pure-noise random features, which pushes the model past
#      the interpolation threshold (helps, oddly),
#   3. semi-supervised whitening with unlabeled data (direction depends on
#      the problem; here it hurts slightly at the peak).

from dataclasses import replace

import numpy as np

import riskcurves as rc
from riskcurves.curves import SEED_AUGMENT, SEED_SPLIT, mix

DATA = rc.GaussianSpec(dim=40, informative=10, separation=2.5)
N = 40
REPS = 30
SEED = 4
TEST = 1000


def paired_summary(name, base, other):
    diff = np.asarray(base) - np.asarray(other)
    se = diff.std(ddof=1) / np.sqrt(len(diff))
    verdict = "helps" if diff.mean() > 0 else "hurts"
    print(
        f"  {name:<24} mean risk {np.mean(other):.3f}  "
        f"(change {diff.mean():+.3f} +- {se:.3f}, {verdict})"
    )


risks = {"mnlr": [], "ridge": [], "augmented": [], "pfld": [], "semisup": []}
for rep in range(REPS):
    pool = rc.gen_two_gaussians(replace(DATA, seed=mix(SEED, rep)), N + TEST)
    train, test = rc.split(pool, N, mix(SEED, rep, SEED_SPLIT))
    unlabeled = rc.gen_two_gaussians(replace(DATA, seed=mix(SEED, rep, 2)), 400).x

    def risk(model, test_set=None):
        ts = test if test_set is None else test_set
        return rc.zero_one_risk(rc.predict(model, ts.x), ts.y)

    risks["mnlr"].append(risk(rc.fit_mnlr(train.x, train.y)))
    risks["ridge"].append(risk(rc.fit_ridge(train.x, train.y, 0.1)))
    risks["pfld"].append(risk(rc.fit_pfld(train.x, train.y)))
    risks["semisup"].append(risk(rc.fit_semisup_pfld(train.x, train.y, unlabeled)))

    tr_aug = rc.append_random_features(train, 40, 1.0, mix(SEED, rep, SEED_AUGMENT))
    te_aug = rc.append_random_features(test, 40, 1.0, mix(SEED, rep, SEED_AUGMENT, 1))
    risks["augmented"].append(risk(rc.fit_mnlr(tr_aug.x, tr_aug.y), te_aug))

print(f"at the interpolation threshold N = n = {N} ({REPS} paired reps):")
print(f"  {'plain MNLR':<24} mean risk {np.mean(risks['mnlr']):.3f}")
paired_summary("ridge(0.1)", risks["mnlr"], risks["ridge"])
paired_summary("+40 noise features", risks["mnlr"], risks["augmented"])
print(f"  {'plain PFLD':<24} mean risk {np.mean(risks['pfld']):.3f}")
paired_summary("semisup (400 unlabeled)", risks["pfld"], risks["semisup"])
