#!/usr/bin/env python3
"""Generate the bundled synthetic academic fixture.

The published study never released its raw student records, so this script
draws a synthetic 50-row table with the same column set and searches seeds
until every bundled hypothesis test reaches the same decision the original
study reported (and correlations land close to the reported values).

Usage: python3 tools/make_fixture.py > data/fixtures/academic_synthetic.csv

Requires numpy and scipy. The output is committed; rerunning is only needed
when the fixture design changes.
"""

import csv
import sys

import numpy as np
from scipy import stats

N = 50
COURSES = ["B.Tech", "M.Tech", "MCA"]
STATES = ["Punjab", "Haryana", "Delhi", "Himachal Pradesh"]
MISSING_RESEARCH_ROW = 17


def draw(rng):
    course = rng.choice(COURSES, size=N, p=[0.4, 0.3, 0.3])
    regularity = rng.integers(1, 5, size=N)
    eca = np.clip(np.round(2.6 - 0.55 * regularity + rng.normal(0, 0.55, N)), 0, 2).astype(int)
    sem = rng.choice([2, 4, 6], size=N)
    cgpa = np.round(5.2 + 0.75 * regularity + rng.normal(0, 0.7, N) + 0.05 * sem, 2)
    cgpa = np.clip(cgpa, 4.0, 10.0)
    backlogs = np.clip(np.round(6.5 - 0.7 * cgpa + rng.normal(0, 0.8, N)), 0, 6).astype(int)
    projects = np.clip(np.round(-3.0 + 0.6 * cgpa + rng.normal(0, 0.8, N)), 0, 5).astype(int)
    research = np.clip(np.round(-2.5 + 0.4 * cgpa + rng.normal(0, 0.7, N)), 0, 3).astype(int)
    all_rounder = np.clip(np.round(3.0 + 2.2 * eca + rng.normal(0, 1.2, N), 1), 0, 10)
    state = rng.choice(STATES, size=N)
    subjects = rng.choice([5, 6, 7], size=N)
    return dict(course=course, regularity=regularity, eca=eca, sem=sem, cgpa=cgpa,
                backlogs=backlogs, projects=projects, research=research,
                all_rounder=all_rounder, state=state, subjects=subjects)


def anova(dep, factor):
    groups = [dep[factor == lv] for lv in np.unique(factor)]
    return stats.f_oneway(*groups)


def score(d):
    alpha = 0.05
    research_mask = np.arange(N) != MISSING_RESEARCH_ROW
    checks = [
        anova(d["regularity"], d["eca"]).pvalue < alpha,
        anova(d["cgpa"], d["regularity"]).pvalue < alpha,
        anova(d["cgpa"], d["sem"]).pvalue >= alpha,
        stats.pearsonr(d["eca"], d["regularity"]).pvalue < alpha,
        stats.pearsonr(d["regularity"], d["cgpa"]).pvalue < alpha,
        stats.pearsonr(d["sem"], d["cgpa"]).pvalue >= alpha,
        stats.pearsonr(d["backlogs"], d["cgpa"]).pvalue < alpha,
        stats.pearsonr(d["projects"], d["cgpa"]).pvalue < alpha,
        stats.pearsonr(d["research"][research_mask], d["cgpa"][research_mask]).pvalue < alpha,
        stats.pearsonr(d["all_rounder"], d["eca"]).pvalue < alpha,
        anova(d["cgpa"], d["state"]).pvalue >= alpha,
        stats.pearsonr(d["subjects"], d["cgpa"]).pvalue >= alpha,
        stats.chi2_contingency(
            np.array([[np.sum((d["state"] == s) & (d["subjects"] == k)) for k in (5, 6, 7)]
                      for s in STATES]), correction=False)[1] >= alpha,
        all(np.sum(d["course"] == c) > 0 for c in COURSES),
        len(np.unique(d["regularity"])) == 4,
        len(np.unique(d["eca"])) == 3,
    ]
    if not all(checks):
        return None
    return (abs(stats.pearsonr(d["eca"], d["regularity"])[0] + 0.550)
            + abs(stats.pearsonr(d["regularity"], d["cgpa"])[0] - 0.639)
            + abs(stats.pearsonr(d["sem"], d["cgpa"])[0] - 0.075)
            + abs(anova(d["cgpa"], d["sem"]).pvalue - 0.871))


def main():
    best = None
    for seed in range(20000):
        d = draw(np.random.default_rng(seed))
        s = score(d)
        if s is not None and (best is None or s < best[0]):
            best = (s, seed, d)
    if best is None:
        sys.exit("no seed satisfied the decision constraints")
    _, seed, d = best
    print(f"# seed {seed}", file=sys.stderr)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["No_of_Backlogs", "Extra_Curriculum_activities", "Regularity", "CGPA",
                "State", "Projects", "Research_Work", "All_Rounder_Score", "No_of_Sem",
                "No_of_Subjects", "Course"])
    for i in range(N):
        research = "" if i == MISSING_RESEARCH_ROW else str(d["research"][i])
        w.writerow([d["backlogs"][i], d["eca"][i], d["regularity"][i], f"{d['cgpa'][i]:.2f}",
                    d["state"][i], d["projects"][i], research, f"{d['all_rounder'][i]:.1f}",
                    d["sem"][i], d["subjects"][i], d["course"][i]])


if __name__ == "__main__":
    main()
