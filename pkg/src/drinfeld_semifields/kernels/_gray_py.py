"""Vectorised numpy version of the Gray-code rank scan (same results, no compiler)."""

from __future__ import annotations

import numpy as np

from ..algebra.linalg import inv_table

CHUNK = 4096


def batched_rank(W: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices W with shape (B, R, C)."""
    W = np.array(W, dtype=np.int64) % p
    B, R, C = W.shape
    inv = inv_table(p)
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    for c in range(C):
        col = W[:, :, c]
        mask = (col != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        r = rank[b]
        piv = np.argmax(mask[b], axis=1)
        top = W[b, r].copy()
        W[b, r] = W[b, piv]
        W[b, piv] = top
        W[b, r] = W[b, r] * inv[W[b, r, c]][:, None] % p
        f = np.where(rows[None, :] > r[:, None], W[b, :, c], 0)
        W[b] = (W[b] - f[:, :, None] * W[b, r][:, None, :]) % p
        rank[b] += 1
    return rank


def rank_mod_p(M: np.ndarray, p: int) -> int:
    return int(batched_rank(np.asarray(M)[None], p)[0])


def gray_scan(basis: np.ndarray, p: int, stop_below: int):
    basis = np.asarray(basis, dtype=np.int64) % p
    k, R, C = basis.shape
    full = min(R, C)
    total = p ** k
    if total <= 1:
        return None, 0, None, 0
    weights = p ** np.arange(k + 1, dtype=np.int64)
    min_rank, deficient, witness, scanned = full + 1, 0, None, 0
    flat = basis.reshape(k, R * C)
    for start in range(1, total, CHUNK):
        t = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        counter = (t[:, None] // weights[None, :]) % p
        gray = (counter[:, :k] - counter[:, 1:]) % p
        words = (gray @ flat % p).reshape(-1, R, C)
        ranks = batched_rank(words, p)
        hit = np.nonzero(ranks < stop_below)[0]
        if hit.size:
            upto = hit[0] + 1
            ranks, gray = ranks[:upto], gray[:upto]
        scanned += len(ranks)
        deficient += int(np.count_nonzero(ranks < full))
        i = int(np.argmin(ranks))
        if ranks[i] < min_rank:
            min_rank = int(ranks[i])
            witness = gray[i].copy()
        if hit.size:
            break
    return min_rank, deficient, witness, scanned
