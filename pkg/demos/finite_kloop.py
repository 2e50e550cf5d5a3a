"""A nonassociative K-loop of order 21 and the Hopf structures built on it.

    python3 demos/finite_kloop.py
"""
from snyder_kloop import finite_hopf as fh

# Search semidirect products Z_7 x| Z_3 with a twisting involution for a K-loop
found = fh.search_kloop(7)
gl = found["construction"]
L = gl.loop
U = fh.conjugation_action(gl)
print(f"A = {found['A'].tolist()}, M = {found['M'].tolist()}: loop of order {L.order}")
print("flags:", {k: v for k, v in fh.classify_loop(L).items()})
print("associator witness:", fh.associator_witness(L))

# Every involution of the order-21 group itself only carves out Z_7
print("\ninvolution survey of the order-21 group:")
for row in fh.order21_involution_survey():
    print(f"   loop order {row['loop_order']}, associative {row['associative']}")

# The loop algebra, its dual and the cross product with the precession group
print("\nstructure checks:")
for name, res in fh.fixture_suite(L, U).items():
    print(f"  {name:14s} {res.status:5s} {res.witness if not res.passed else ''}")

# A group that is not a K-loop: the symmetric group lacks the automorphic inverse property
s3 = fh.fixture("s3")
print("\nS3 identity failures:", fh.identity_failures(s3))
