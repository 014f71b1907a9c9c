"""Certify the 7-sphere structure on S^15 built from octonion multiplication."""
import time

from csl.constructions import hurwitz_radon_family, matrix_contact_sphere, relation_check
from csl.psphere import psphere_check, round_check, taut_check

fam = hurwitz_radon_family(8)
spec = matrix_contact_sphere(fam)
t0 = time.perf_counter()
cert = psphere_check(spec)
print(f"volume coefficient: {cert.status.value} {cert.value} ({time.perf_counter() - t0:.2f}s)")
print("taut:", taut_check(spec).taut)
print("round:", round_check(spec).round)
print("relation check:", relation_check(fam).ok)
