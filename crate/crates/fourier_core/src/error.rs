use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("dimension {0} not supported (expected 1, 2 or 3)")]
    Dimension(usize),
    #[error("collocation grids need an even node count, got {0}")]
    OddCollocation(usize),
    #[error("galerkin grid with N = {n} needs at least {need} points per axis, got {m}")]
    GridTooCoarse { n: usize, m: usize, need: usize },
    #[error("cutoff too large for grid: requested {requested}, field carries {available}")]
    CutoffTooLarge { requested: usize, available: usize },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("{0} requires a galerkin field")]
    NotGalerkin(&'static str),
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error("product of {factors} factors is not exact on M = {m} for N = {n}")]
    ProductNotExact { factors: usize, n: usize, m: usize },
}
