"""This module contains functions to create the benchmark CSV report."""

from typing import Dict, List, Optional
import os
import sys

import pandas as pd

from files_operations import create_folder

COLUMN_ORDER = ["model", "n", "k", "mode", "answer", "millis", "trials"]


def create_dataframe(rows: List[Dict[str, object]]) -> pd.DataFrame:
    """Create a pandas DataFrame from benchmark rows.

    Args:
        rows (List[Dict[str, object]]): One dictionary per solver run.

    Returns:
        pd.DataFrame: DataFrame with the report columns in fixed order.
    """
    df = pd.DataFrame(rows)
    df = df.reindex(columns=COLUMN_ORDER)
    return df


def create_csv(dataframe: pd.DataFrame, save_path: Optional[str] = None) -> None:
    """Write the report as CSV to a file, or to stdout when no path is given.

    Args:
        dataframe (pd.DataFrame): Report.
        save_path (Optional[str]): Destination file.
    """
    if save_path is None:
        dataframe.to_csv(sys.stdout, index=False, lineterminator="\n")
        return
    folder = os.path.dirname(save_path)
    if folder:
        create_folder(folder)
    dataframe.to_csv(save_path, index=False, lineterminator="\n")
