"""Dense two-phase revised simplex for the cut LPs.

The primal problem is ``max f . xi`` subject to ``rows @ xi <= 1`` with xi
free; it is solved through its dual

    min 1 . y   s.t.   rows.T @ y = f,   y >= 0,

whose basis dimension is the small fixed coefficient count d = len(f) while
the variable count tracks the (growing) cut set.  The basis is refactored
densely every iteration; at d <= 82 that is cheaper than bookkeeping.

Degeneracy: the natural objectives are unit vectors, so the dual RHS is
almost entirely zero and simplex on it cycles.  All pivoting therefore runs
against a deterministically perturbed RHS (generic, hence primal
nondegenerate); the working basis stays optimal for the perturbed RHS
across warm restarts, and exact-RHS answers are extracted on a throwaway
basis copy by a handful of dual-simplex steps.

Warm restarts: appended cuts keep the perturbed basis primal feasible
(primal steps re-optimize); objective changes keep it dual feasible
(dual steps re-optimize).
"""

from __future__ import annotations

import numpy as np

_RC_TOL = 1e-9
_PIV_TOL = 1e-11
_X_TOL = 1e-10


class LPError(RuntimeError):
    pass


class CutLP:
    """Incremental LP over supporting-hyperplane cuts."""

    def __init__(self, rows: np.ndarray, f: np.ndarray):
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        self.d = rows.shape[1]
        self.rows = rows
        self.f = np.asarray(f, dtype=float)
        # deterministic irregular bump; must dominate basis-solve noise
        self._bump = 0.5 + 0.45 * np.sin(43758.5453 * np.arange(1, self.d + 1))
        # basis entries: >= 0 index a cut column, -(i+1) the i-th artificial
        self.basis: list[int] | None = None
        self._art_sign = np.ones(self.d)

    # -- helpers --------------------------------------------------------------

    @property
    def _f_pert(self) -> np.ndarray:
        scale = max(1.0, float(np.max(np.abs(self.f))))
        return self.f + 1e-6 * scale * self._bump

    def _col(self, j: int) -> np.ndarray:
        if j >= 0:
            return self.rows[j]
        i = -j - 1
        e = np.zeros(self.d)
        e[i] = self._art_sign[i]
        return e

    def _basis_matrix(self) -> np.ndarray:
        return np.column_stack([self._col(j) for j in self.basis])

    # -- public api -----------------------------------------------------------

    def add_rows(self, new_rows: np.ndarray) -> None:
        new_rows = np.atleast_2d(np.asarray(new_rows, dtype=float))
        if new_rows.size:
            self.rows = np.vstack([self.rows, new_rows])

    def solve(self, max_iter: int = 30000) -> tuple[np.ndarray, float]:
        """Returns (xi, value) for the primal; raises LPError on failure."""
        fp = self._f_pert
        if self.basis is None:
            self._art_sign = np.where(fp >= 0.0, 1.0, -1.0)
            self.basis = [-(i + 1) for i in range(self.d)]
            self._simplex(fp, phase=1, max_iter=max_iter)
            B = self._basis_matrix()
            xB = np.linalg.solve(B, fp)
            # residual artificial levels are fp noise (eps * cond of the
            # working basis); genuine infeasibility shows up at O(1)
            art_level = sum(abs(xB[i]) for i, j in enumerate(self.basis) if j < 0)
            if art_level > 1e-4 * max(1.0, float(np.abs(fp).sum())):
                raise LPError("dual infeasible: primal problem is unbounded on the cut set")
            self._purge_artificials()
            if any(j < 0 for j in self.basis):
                raise LPError("cut set does not span the coefficient space")
        self._simplex(fp, phase=2, max_iter=max_iter)
        return self._extract_exact(max_iter)

    def reoptimize(self, f_new: np.ndarray, max_iter: int = 30000) -> tuple[np.ndarray, float]:
        """Warm restart after an objective change via dual simplex steps."""
        self.f = np.asarray(f_new, dtype=float)
        if self.basis is None:
            return self.solve(max_iter=max_iter)
        if not self._dual_steps(self._f_pert, max_iter):
            self.basis = None
            return self.solve(max_iter=max_iter)
        return self._extract_exact(max_iter)

    # -- internals ------------------------------------------------------------

    def _extract_exact(self, max_iter: int) -> tuple[np.ndarray, float]:
        """Exact-RHS optimum on a throwaway copy of the perturbed-optimal basis."""
        saved = list(self.basis)
        ok = self._dual_steps(self.f, max_iter)
        if not ok:
            self.basis = None
            return self.solve(max_iter=max_iter)
        out = self._primal()
        self.basis = saved
        return out

    def _simplex(self, f: np.ndarray, phase: int, max_iter: int) -> None:
        cost_y = 0.0 if phase == 1 else 1.0
        stall = 0
        bland_until = -1
        best_obj = np.inf
        no_progress = 0
        for it in range(max_iter):
            B = self._basis_matrix()
            try:
                xB = np.linalg.solve(B, f)
            except np.linalg.LinAlgError as exc:
                raise LPError("singular working basis") from exc
            cB = np.array(
                [(cost_y if j >= 0 else (1.0 if phase == 1 else 0.0)) for j in self.basis]
            )
            pi = np.linalg.solve(B.T, cB)
            obj = float(cB @ xB)
            if obj < best_obj - 1e-13 * max(1.0, abs(best_obj)):
                best_obj = obj
                no_progress = 0
            else:
                no_progress += 1
                if no_progress > 200 and phase == 2:
                    return  # churning on fp-scale reduced costs; weak duality
                    # keeps any iterate a valid bound
            rc = cost_y - self.rows @ pi
            for j in self.basis:
                if j >= 0:
                    rc[j] = 0.0
            # pricing is only accurate to the fp error of the dot products
            rc_tol = max(_RC_TOL, 5e-15 * (1.0 + float(np.sum(np.abs(pi)))))
            if it <= bland_until:
                negs = np.nonzero(rc < -rc_tol)[0]
                j_in = int(negs[0]) if negs.size else int(np.argmin(rc))
            else:
                j_in = int(np.argmin(rc))
            if rc[j_in] >= -rc_tol:
                return
            d_col = np.linalg.solve(B, self._col(j_in))
            mask = d_col > _PIV_TOL
            if not np.any(mask):
                raise LPError("dual unbounded: conflicting cuts")
            pos = np.maximum(xB, 0.0)
            ratios = np.where(mask, pos / np.where(mask, d_col, 1.0), np.inf)
            r_min = float(np.min(ratios))
            ties = np.nonzero(ratios <= r_min + 1e-15 * (1.0 + r_min))[0]
            if it <= bland_until and len(ties) > 1:
                i_out = int(min(ties, key=lambda i: self.basis[i]))
            else:
                i_out = int(ties[0])
            if r_min < 1e-12:
                stall += 1
                if stall > 40 and bland_until < it:
                    bland_until = it + 5000
            else:
                stall = 0
            self.basis[i_out] = j_in
        raise LPError(f"simplex iteration limit reached in phase {phase}")

    def _purge_artificials(self) -> None:
        """Swap zero-level artificials for cut columns (degenerate pivots)."""
        for i, j in enumerate(self.basis):
            if j >= 0:
                continue
            B = self._basis_matrix()
            e = np.zeros(self.d)
            e[i] = 1.0
            sigma = np.linalg.solve(B.T, e)
            row_vals = self.rows @ sigma
            basic = set(b for b in self.basis if b >= 0)
            for k in np.argsort(-np.abs(row_vals)):
                if abs(row_vals[k]) < 1e-12:
                    break
                if int(k) not in basic:
                    self.basis[i] = int(k)
                    break

    def _dual_steps(self, f: np.ndarray, max_iter: int) -> bool:
        """Dual simplex toward primal feasibility for RHS f.

        Requires a dual-feasible start; returns False when f escapes the
        cone of the current cut set (caller rebuilds cold).
        """
        worst = -np.inf
        no_progress = 0
        for _ in range(max_iter):
            B = self._basis_matrix()
            xB = np.linalg.solve(B, f)
            i_out = int(np.argmin(xB))
            if xB[i_out] >= -_X_TOL * max(1.0, float(np.max(np.abs(xB)))):
                return True
            if xB[i_out] > worst + 1e-15:
                worst = float(xB[i_out])
                no_progress = 0
            else:
                no_progress += 1
                if no_progress > 500:
                    return False
            e = np.zeros(self.d)
            e[i_out] = 1.0
            sigma = np.linalg.solve(B.T, e)
            cB = np.array([1.0 if j >= 0 else 0.0 for j in self.basis])
            pi = np.linalg.solve(B.T, cB)
            rc = 1.0 - self.rows @ pi
            row_vals = self.rows @ sigma
            basic = set(j for j in self.basis if j >= 0)
            best, best_ratio = -1, np.inf
            for j in np.nonzero(row_vals < -_PIV_TOL)[0]:
                j = int(j)
                if j in basic:
                    continue
                ratio = max(rc[j], 0.0) / (-row_vals[j])
                if ratio < best_ratio - 1e-15 or (ratio <= best_ratio + 1e-15 and j < best):
                    best, best_ratio = j, ratio
            if best < 0:
                return False
            self.basis[i_out] = best
        raise LPError("dual simplex failed to converge")

    def _primal(self) -> tuple[np.ndarray, float]:
        B = self._basis_matrix()
        cB = np.array([1.0 if j >= 0 else 0.0 for j in self.basis])
        xi = np.linalg.solve(B.T, cB)
        return xi, float(self.f @ xi)
