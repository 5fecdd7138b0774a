"""
Rounding-mode conformance tables and the before / after summation round-off error data, as CSV.
"""

from pathlib import Path

from src.roundspec.rounding.improved import error_profiles_to_csv, per_addend_error_profile, post_sum_error_profile
from src.roundspec.rounding.modes import TABLE1_INPUTS, TABLE1_MODES, TABLE2_INPUTS, TABLE2_MODES, conformance_table_to_csv
from src.roundspec.utils.general import get_logger

logger = get_logger("tables")

TABLE_FILES = ("table1.csv", "table2.csv", "fig2_errors.csv", "fig3_errors.csv")


def emit_tables(out_dir: Path) -> list[Path]:
    """
    Write table1.csv (IEEE rules x half-integers), table2.csv (ten modes x seventeen inputs),
    fig2_errors.csv (per-addend errors) and fig3_errors.csv (errors of the rounded sum).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table1, table2, per_addend, post_sum = (out_dir / name for name in TABLE_FILES)

    conformance_table_to_csv(TABLE1_MODES, TABLE1_INPUTS, table1)
    conformance_table_to_csv(TABLE2_MODES, TABLE2_INPUTS, table2)
    error_profiles_to_csv(per_addend_error_profile(), per_addend)
    error_profiles_to_csv(post_sum_error_profile(), post_sum)

    logger.info(f"wrote {', '.join(TABLE_FILES)} to {out_dir}")
    return [table1, table2, per_addend, post_sum]
