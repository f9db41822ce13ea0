from pydantic import BaseModel, ConfigDict


class RecordedConstants(BaseModel):
    """
    Constants recorded for the flow-ledger regression bounds and the numeric
    tolerances. They are part of the repository's contract: tests and the bench
    report assert against exactly these values.
    """

    model_config = ConfigDict(frozen=True)

    # total instance edges <= c*m*ceil(log2|I|) + c*m
    isolating_cuts_c: int = 8
    # total instance edges <= c*m*beta^2*ceil(log2 t)^5
    unbalanced_c: int = 16
    # flow calls <= c*n/eps^2
    approx_calls_c: int = 20
    # total instance edges <= c*m*k^2*ceil(log2 n)^p
    check_k_c: int = 4
    check_k_polylog_exponent: int = 3
    spectral_tolerance: float = 1e-9
    brute_force_cap: int = 20
    brute_sparse_cap: int = 18
    dense_spectrum_limit: int = 2000


RECORDED_CONSTANTS = RecordedConstants()
