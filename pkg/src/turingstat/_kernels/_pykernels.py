"""Pure-Python xoshiro256** Bernoulli kernels (fallback for ``_ckernels``)."""

_MASK = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


def next_u64(state, count):
    """Return ``(outputs, new_state)`` for ``count`` raw 64-bit draws."""
    s0, s1, s2, s3 = state
    out = []
    append = out.append
    for _ in range(count):
        append((_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK)
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
    return out, (s0, s1, s2, s3)


def bernoulli_draws(state, threshold, count):
    """``count`` draws of ``(x >> 11) < threshold`` as a bytes of 0/1."""
    s0, s1, s2, s3 = state
    out = bytearray(count)
    for i in range(count):
        x = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        if (x >> 11) < threshold:
            out[i] = 1
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
    return bytes(out), (s0, s1, s2, s3)


def bernoulli_count(state, threshold, count):
    s0, s1, s2, s3 = state
    hits = 0
    for _ in range(count):
        x = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        if (x >> 11) < threshold:
            hits += 1
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
    return hits, (s0, s1, s2, s3)
