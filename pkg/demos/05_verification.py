"""Grading every recorded value of a construction dataset.

The datasets are transcriptions: every expected value carries a citation
into its source, and verification replays the whole pipeline and grades
each recorded number.  Three outcomes exist per check: pass (recorded and
computed agree), erratum (they disagree, and the dataset ships a recorded
correction the replay confirms instead) and fail (they disagree with no
recorded correction, or the construction itself breaks).

Run:  python3 demos/05_verification.py
"""

from blowdown import available_constructions, load_construction, verify

print(f"Built-in constructions: {', '.join(available_constructions())}")
print()

for name in available_constructions():
    construction = load_construction(name)
    report = verify(construction)
    statuses = [check.status for check in report.checks]
    print(f"{name}: {len(report.checks)} checks, ok={report.ok}, "
          f"errata_found={report.errata_found}")
    for check in report.checks:
        print(f"  [{check.status.upper():7}] {check.name}")
    print()

print("The erratum mechanism in detail, on 'main_k3':")
report = verify(load_construction("main_k3"))
for check in report.checks:
    if check.status == "erratum":
        print(f"  {check.name}:")
        for line in check.details:
            print(f"    {line}")
        print()

print("Every recorded value must carry a citation; the last check counts them:")
citation = [c for c in report.checks if c.name == "citation"][0]
for line in citation.details:
    print(f"  {line}")
