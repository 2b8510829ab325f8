"""
Encoding, corrupting and decoding
=================================

Message symbols in GF(16) are protected by a Reed-Solomon code of length 15
and distance 5.  Each codeword symbol becomes a block of 18 quaternary
symbols, and blocks are separated by the marker 01201.  The channel adds
up to 20 short tandem duplications and one substitution.
"""

# %%
import numpy as np

from tdsub import ChannelConfig, decode_report, encode, make_params, sample_output, word_str

params = make_params(q=4, sigma="01201", m=18, field_degree=4)
print(f"N={params.N} blocks, k={params.k} message symbols, n={params.n} symbols, M={params.M}")

rng = np.random.default_rng(1)
msg = [int(v) for v in rng.integers(0, 16, params.k)]
x = encode(params, msg)
print(word_str(x)[:69], "...")

# %%
cfg = ChannelConfig(q=4, max_duplications=20)
y, trace = sample_output(cfg, x, rng)
print(f"received {len(y)} symbols after {len(trace)} events")
print(trace.dumps())

# %%
rep = decode_report(params, y)
print(rep.format())
print("recovered:", rep.message == msg)

# %%
# A short Monte Carlo run
failures = 0
for _ in range(500):
    msg = [int(v) for v in rng.integers(0, 16, params.k)]
    y, _ = sample_output(cfg, encode(params, msg), rng)
    failures += decode_report(params, y).message != msg
print("failures in 500 trials:", failures)
