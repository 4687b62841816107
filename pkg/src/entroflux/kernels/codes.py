"""Integer codes shared by both kernel backends."""

CENTRAL, EC1, EC2, ECKEP, LLF, ROE = range(6)
STAB_NONE, STAB_ES, STAB_HES = range(3)

FLUX_CODES = {
    "central": CENTRAL,
    "ec1": EC1,
    "ec2": EC2,
    "eckep": ECKEP,
    "llf": LLF,
    "roe": ROE,
}
STAB_CODES = {"none": STAB_NONE, "es": STAB_ES, "hes": STAB_HES}

# Relative threshold below which a tangential-momentum jump counts as
# negligible in the Rankine-Hugoniot speed estimate. Jumps at round-off
# level would otherwise give an arbitrary ratio and switch alpha_S.
TANGENT_TOL = 1e-8

# alpha_S at or below this fraction of lambda_max counts as zero, so no
# diffusion and no sonic fix. A steady contact on a rotated grid then
# keeps alpha_S = 0 despite a round-off normal velocity.
ALPHA_ZERO_TOL = 1e-12
