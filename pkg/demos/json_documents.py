"""Walkthrough: the JSON document formats and what validation catches.

Algebras, degree-0 choices, and prolongation results all have stable
JSON forms. Emission is canonical (byte-stable), parsing is strict,
and a corrupted structure constant surfaces as a bracket-law
violation rather than a parse error, because every bracket is written
in both orientations.
"""

import json

from tanaka import (
    AlgebraInputError,
    G0Spec,
    emit_algebra,
    emit_result,
    emit_result_document,
    make_algebra,
    parse_algebra,
    parse_result,
    prolong,
    resolve_g0,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("An algebra document carries degrees and both bracket orientations")
heis = make_algebra("heisenberg3")
doc = emit_algebra(heis, name="heisenberg3")
print(doc.strip())

banner("Parsing an emitted document is lossless")
loaded = parse_algebra(doc)
print("name:", loaded.name)
print("violations:", list(loaded.violations))
print("re-emitting reproduces the bytes:",
      emit_algebra(loaded.algebra, name=loaded.name) == doc)

banner("Corrupting one constant breaks antisymmetry, not the parser")
raw = json.loads(doc)
raw["brackets"][0]["value"][0]["num"] += 1
bad = parse_algebra(json.dumps(raw))
print("still parses:", bad.algebra is not None)
for line in bad.violations:
    print("violation:", line)

banner("Schema errors are a different failure mode entirely")
raw = json.loads(doc)
raw["brackets"][0]["left"] = "no_such_label"
try:
    parse_algebra(json.dumps(raw))
except AlgebraInputError as exc:
    print("rejected:", exc)

banner("Prolongation results round-trip byte-identically")
result = prolong(heis, resolve_g0(G0Spec("der0"), heis), max_degree=2)
text = emit_result(result)
print("re-emit == original bytes:",
      emit_result_document(parse_result(text)) == text)
print("document keys:", list(json.loads(text)))
