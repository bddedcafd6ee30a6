use super::{Ball, Mag, Precision};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DOUBLINGS: u32 = 10;

/// Evaluate `f` at increasing precision until the radius is at most `target`.
///
/// Starts at `start` and doubles the precision after each miss, up to
/// `max_doublings` times. Domain and convergence errors from `f` are returned
/// immediately since more bits cannot fix them.
pub fn adaptive_eval_with<F>(mut f: F, target: Mag, start: Precision, max_doublings: u32) -> Result<Ball>
where
    F: FnMut(Precision) -> Result<Ball>,
{
    let mut prec = start;
    let mut best: Option<Ball> = None;
    for attempt in 0..=max_doublings {
        let ball = f(prec)?;
        if ball.rad() <= target {
            return Ok(ball);
        }
        if best.as_ref().is_none_or(|b| ball.rad() < b.rad()) {
            best = Some(ball);
        }
        if attempt < max_doublings {
            prec = prec.doubled();
        }
    }
    Err(Error::Precision { best: best.expect("at least one attempt"), target, bits: prec.bits() })
}

pub fn adaptive_eval<F>(f: F, target: Mag, start: Precision) -> Result<Ball>
where
    F: FnMut(Precision) -> Result<Ball>,
{
    adaptive_eval_with(f, target, start, DEFAULT_MAX_DOUBLINGS)
}
