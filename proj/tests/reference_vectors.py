#!/usr/bin/env python3
"""Independent reference for the transcript golden vectors.

Reimplements the deterministic toy training run (splitmix64 streams, linear
SGD, SHA-256 digests) from scratch in Python and prints the digests that
tests/test_transcript.cpp freezes. Running it again must always reproduce
exactly the same values; if the C++ library ever disagrees, one of the two
sides broke the byte-level contract.
"""

import hashlib
import struct

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next_u64(self):
        self.state = (self.state + GAMMA) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return (z ^ (z >> 31)) & MASK

    def uniform01(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_sym(self):
        return 2.0 * self.uniform01() - 1.0

    @staticmethod
    def at_offset(seed, draws):
        return SplitMix64((seed + draws * GAMMA) & MASK)


def weights_digest(ws):
    h = hashlib.sha256()
    for w in ws:
        h.update(struct.pack("<d", w))
    return h.hexdigest()


def init_weights(seed, dim):
    gen = SplitMix64(seed)
    return [gen.uniform_sym() for _ in range(dim)]


def teacher(data_seed, dim):
    gen = SplitMix64(data_seed)
    return [gen.uniform_sym() for _ in range(dim)]


def sample(data_seed, dim, theta, step):
    gen = SplitMix64.at_offset(data_seed, dim * (step + 1))
    x = [gen.uniform_sym() for _ in range(dim)]
    y = 0.0
    for j in range(dim):
        y = y + theta[j] * x[j]
    return x, y


def train(seed, dim, steps, checkpoint_every, lr, data_seed):
    theta = teacher(data_seed, dim)
    w = init_weights(seed, dim)
    checkpoints = [(0, weights_digest(w))]
    for t in range(steps):
        x, y = sample(data_seed, dim, theta, t)
        pred = 0.0
        for j in range(dim):
            pred = pred + w[j] * x[j]
        err = pred - y
        for j in range(dim):
            w[j] = w[j] - (lr * err) * x[j]
        if (t + 1) % checkpoint_every == 0:
            checkpoints.append((t + 1, weights_digest(w)))
    seg_hashes = []
    for seg in range(steps // checkpoint_every):
        h = hashlib.sha256()
        for t in range(seg * checkpoint_every, (seg + 1) * checkpoint_every):
            x, y = sample(data_seed, dim, theta, t)
            for xi in x:
                h.update(struct.pack("<d", xi))
            h.update(struct.pack("<d", y))
        seg_hashes.append(h.hexdigest())
    return checkpoints, seg_hashes


def main():
    print("init_weights(seed=42, dim=8) digest:")
    print("  " + weights_digest(init_weights(42, 8)))

    cps, segs = train(seed=7, dim=4, steps=100, checkpoint_every=25, lr=0.1,
                      data_seed=1234)
    print("train(seed=7, dim=4, steps=100, every=25, lr=0.1, data_seed=1234):")
    for step, digest in cps:
        print(f"  checkpoint step {step:3d}: {digest}")
    for i, h in enumerate(segs):
        print(f"  data segment {i}: {h}")


if __name__ == "__main__":
    main()
