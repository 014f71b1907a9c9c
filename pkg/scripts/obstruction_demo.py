"""Show why the five-dimensional pair cannot be a contact 1-sphere.

The top coefficient restricted to a circle of lambdas is an odd polynomial,
so it takes opposite signs at antipodal points and must vanish in between.
"""
import json

from csl.constructions import r5_pair
from csl.psphere import odd_dim_obstruction, psphere_check

spec = r5_pair()
rep = odd_dim_obstruction(spec)
print(json.dumps(rep.to_dict(), indent=2))
print("witness re-verifies:", rep.verify())
cert = psphere_check(spec)
print("ladder verdict:", cert.status.value, cert.method)
