"""Damped multivariate predictive regression for stock-return forecasting."""

from ._predreg import (
    ObservationTable,
    PredregError,
    adf_test,
    damping_transform,
    dividend_yield,
    earnings_price,
    evaluate,
    fit,
    forecast,
    load_observations,
    moment_check,
    run_cli,
    simulate_random_walk,
    stock_return,
    summarize,
    window_counts,
)

__version__ = "0.1.0"
