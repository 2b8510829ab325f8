"""
The outer Reed-Solomon code
===========================

Four parity symbols give minimum distance 5, so any mix of e errors and
f erasures with 2e + f <= 4 is corrected.
"""

# %%
from tdsub import ReedSolomon

rs = ReedSolomon(4)
msg = list(range(1, rs.k + 1))
c = rs.encode(msg)
print("codeword:", c)

# %%
w = c[:]
w[2] ^= 7
w[9] ^= 1
print("two errors ->", rs.decode(w) == msg)

# %%
w = c[:]
for p in (0, 5, 6, 14):
    w[p] = 0
print("four erasures ->", rs.decode(w, erasures=[0, 5, 6, 14]) == msg)
