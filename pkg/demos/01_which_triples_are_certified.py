# Which (d, k, m) carry a guarantee?  The exact side of the package answers
# by linear algebra over F2 and the answer is cross-checked against the
# parity of a Stirling number.

from chessboard_bisect import certify, parity_table
from chessboard_bisect.grasscoh import build_presentation
from chessboard_bisect.parity import stirling2

# cohomology of the Grassmannian of 2-planes in R^4
pres = build_presentation(2, 2)
print("relations:", [str(r) for r in pres.relations])
print("graded dimensions:", pres.dimensions())  # 1, 1, 2, 1, 1

# one certificate
cert = certify(2, 2, 1)
print(cert.to_dict())

# a small table: 'certified' is the complement of ideal membership
print(" d k m   S(n,k)  certified")
for c in parity_table(3, 4, 1):
    p = c.problem
    print(f" {p.d} {p.k} {p.m}  {stirling2(p.n, p.k):7d}  {c.certified}")

# the smallest planar case without a certificate
print(certify(2, 3, 0).certified)  # S(4,3) = 6 is even
