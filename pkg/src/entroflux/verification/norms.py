"""Discrete error norms and the experimental order of convergence."""
import numpy as np


class DegenerateError(ValueError):
    """EOC undefined: one of the errors is zero (or not positive)."""


def error_norms(numeric, exact, volumes):
    """(L1, L2, Linf) of ``numeric - exact`` weighted by cell size.

    L1 and L2 are normalised by the total volume, so a constant offset c
    gives c for all three norms.
    """
    e = np.asarray(numeric, dtype=np.float64) - np.asarray(exact, dtype=np.float64)
    vol = np.broadcast_to(np.asarray(volumes, dtype=np.float64), e.shape)
    total = vol.sum()
    l1 = float(np.sum(np.abs(e) * vol) / total)
    l2 = float(np.sqrt(np.sum(e * e * vol) / total))
    linf = float(np.max(np.abs(e))) if e.size else 0.0
    return l1, l2, linf


def eoc(err_coarse, err_fine):
    """log2(err_coarse / err_fine) for a grid refined by a factor of two."""
    if not (err_coarse > 0.0 and err_fine > 0.0):
        raise DegenerateError(f"EOC needs positive errors, got {err_coarse}, {err_fine}")
    return float(np.log2(err_coarse / err_fine))


def eoc_table(ns, l1, l2):
    """Rows (N, l1, eoc_l1, l2, eoc_l2); the first row's EOC entries are None."""
    rows = []
    for k, n in enumerate(ns):
        if k == 0:
            rows.append((n, l1[k], None, l2[k], None))
        else:
            rows.append((n, l1[k], eoc(l1[k - 1], l1[k]), l2[k], eoc(l2[k - 1], l2[k])))
    return rows
