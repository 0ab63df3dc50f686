"""Pre-resolution checks on one cuspidal input"""
import logging
import sys
from typing import Any, Dict, List, Tuple

from algebra.forms import integrability_check
from geometry.foliation import (
    CuspidalInput, admissibility_check, build_omega, derive_params, generalized_surface_criterion,
    hopf_pairing, quasi_homogeneity_residual,
)


class FoliationAgent:
    """Admissibility, generalized-surface criterion, integrability and Hopf identity"""

    def check(self, data: CuspidalInput) -> Dict[str, Any]:
        report = admissibility_check(data)
        verdict: Dict[str, Any] = {
            'input': data.to_json(),
            'admissibility': report.to_json(),
            'accepted': report.accepted,
        }
        if not report.accepted:
            print(f"   ❌ Input rejected: {'; '.join(report.violations)}", file=sys.stderr)
            return verdict

        params = derive_params(data)
        _, omega = build_omega(data)
        _, hopf_residual = hopf_pairing(data)
        homogeneity = quasi_homogeneity_residual(data)
        verdict.update({
            'derived': params.to_json(),
            'in_sigma': params.in_sigma,
            'generalized_surface': generalized_surface_criterion(data.G, params.r),
            'integrable': integrability_check(omega),
            'hopf_residual': hopf_residual.render(),
            'quasi_homogeneity_residual': homogeneity.render(),
        })
        verdict['passed'] = verdict['integrable'] and hopf_residual.is_zero() and homogeneity.is_zero()
        if not verdict['passed']:
            logging.error(f"pre-resolution checks failed for p={data.p} q={data.q}")
        print(f"   🔎 Checks: integrable={verdict['integrable']}, Hopf residual {verdict['hopf_residual']}",
              file=sys.stderr)
        return verdict

    def verdict_table(self, verdict: Dict[str, Any]) -> str:
        rows: List[Tuple[str, str]] = [('admissible', 'yes' if verdict['accepted'] else 'no')]
        for clause in verdict['admissibility']['violations']:
            rows.append(('violated clause', clause))
        for warning in verdict['admissibility']['warnings']:
            rows.append(('warning', warning))
        if verdict['accepted']:
            derived = verdict['derived']
            rows += [
                ('delta, d, r', f"{derived['delta']}, {derived['d']}, {derived['r']}"),
                ('in Sigma', 'yes' if verdict['in_sigma'] else 'no'),
                ('generalized surface criterion', verdict['generalized_surface']),
                ('integrable', 'yes' if verdict['integrable'] else 'no'),
                ('Hopf residual', verdict['hopf_residual']),
                ('quasi-homogeneity residual', verdict['quasi_homogeneity_residual']),
            ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)
