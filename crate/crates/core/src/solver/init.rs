use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::state::MhdState;
use crate::error::{Error, Result};
use crate::spectral::{leray_project, random_physical_vector, transform_vector, l2_norm_k, Grid, VectorFieldK, VectorFieldR};

/// Named initial data. Every flow is scaled by an amplitude `A`; angular
/// frequencies are integer multiples of `2π/l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialCondition {
    Zero,
    /// `u = (A sin y, 0, 0)`, `b = 0`.
    Kolmogorov,
    /// `u = A (sin z + cos y, sin x + cos z, sin y + cos x)`, `b = 0`.
    Abc,
    /// `u = A (sin x cos y cos z, -cos x sin y cos z, 0)`, `b = 0`.
    TaylorGreen,
    /// `u = A (-2 sin y, 2 sin x, 0)`, `b = A (-2 sin 2y + sin z, 2 sin x + sin z, 0)`.
    OrszagTang3d,
    /// `b = u` with `u` taken from the inner flow.
    Aligned(Box<InitialCondition>),
    /// Random solenoidal pair supported where `φ(2^{-j}k) = 1` inside the
    /// 2/3 mask, normalised to root-mean-square `A`.
    RandomBand { j: i32, seed: u64 },
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialCondition::Zero => write!(f, "zero"),
            InitialCondition::Kolmogorov => write!(f, "kolmogorov"),
            InitialCondition::Abc => write!(f, "abc"),
            InitialCondition::TaylorGreen => write!(f, "taylor_green"),
            InitialCondition::OrszagTang3d => write!(f, "orszag_tang_3d"),
            InitialCondition::Aligned(inner) => write!(f, "aligned({inner})"),
            InitialCondition::RandomBand { j, seed } => write!(f, "random_band({j}, {seed})"),
        }
    }
}

fn parse_arg<T: FromStr>(raw: &str, key: &str, whole: &str) -> Result<T> {
    let raw = raw.trim();
    let value = match raw.split_once('=') {
        Some((k, v)) if k.trim() == key => v.trim(),
        Some(_) => return Err(Error::UnknownInitialCondition(whole.to_string())),
        None => raw,
    };
    value.parse().map_err(|_| Error::UnknownInitialCondition(whole.to_string()))
}

impl FromStr for InitialCondition {
    type Err = Error;

    /// Accepts `abc`, `aligned(abc)`, `random_band(3, 7)` and
    /// `random_band(j=3, seed=7)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let unknown = || Error::UnknownInitialCondition(s.to_string());
        if let Some(open) = t.find('(') {
            let args = t[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
            return match t[..open].trim() {
                "aligned" => {
                    let inner: InitialCondition = args.parse().map_err(|_| unknown())?;
                    Ok(InitialCondition::Aligned(Box::new(inner)))
                }
                "random_band" => {
                    let (a, b) = args.split_once(',').ok_or_else(unknown)?;
                    Ok(InitialCondition::RandomBand { j: parse_arg(a, "j", s)?, seed: parse_arg(b, "seed", s)? })
                }
                _ => Err(unknown()),
            };
        }
        match t {
            "zero" => Ok(InitialCondition::Zero),
            "kolmogorov" => Ok(InitialCondition::Kolmogorov),
            "abc" => Ok(InitialCondition::Abc),
            "taylor_green" => Ok(InitialCondition::TaylorGreen),
            "orszag_tang_3d" => Ok(InitialCondition::OrszagTang3d),
            _ => Err(unknown()),
        }
    }
}

/// Builds the named initial state at `t = 0`.
pub fn initial_condition(ic: &InitialCondition, amplitude: f64, grid: &Arc<Grid>) -> Result<MhdState> {
    let (u, b) = fields(ic, amplitude, grid)?;
    MhdState::from_spectral(&u, &b, 0.0)
}

/// Parses `name` and builds the state.
pub fn initial_condition_named(name: &str, amplitude: f64, grid: &Arc<Grid>) -> Result<MhdState> {
    initial_condition(&name.parse()?, amplitude, grid)
}

fn analytic(grid: &Arc<Grid>, f: impl Fn(f64, f64, f64) -> [f64; 3] + Sync) -> VectorFieldK {
    transform_vector(&VectorFieldR::from_fn(grid, f))
}

fn fields(ic: &InitialCondition, a: f64, grid: &Arc<Grid>) -> Result<(VectorFieldK, VectorFieldK)> {
    let k = grid.scale();
    let zero = VectorFieldK::zeros(grid);
    Ok(match ic {
        InitialCondition::Zero => (zero.clone(), zero),
        InitialCondition::Kolmogorov => (analytic(grid, |_, y, _| [a * (k * y).sin(), 0.0, 0.0]), zero),
        InitialCondition::Abc => (
            analytic(grid, |x, y, z| {
                let (x, y, z) = (k * x, k * y, k * z);
                [a * (z.sin() + y.cos()), a * (x.sin() + z.cos()), a * (y.sin() + x.cos())]
            }),
            zero,
        ),
        InitialCondition::TaylorGreen => (
            analytic(grid, |x, y, z| {
                let (x, y, z) = (k * x, k * y, k * z);
                [a * x.sin() * y.cos() * z.cos(), -a * x.cos() * y.sin() * z.cos(), 0.0]
            }),
            zero,
        ),
        InitialCondition::OrszagTang3d => {
            let u = analytic(grid, |x, y, _| [-2.0 * a * (k * y).sin(), 2.0 * a * (k * x).sin(), 0.0]);
            let b = analytic(grid, |x, y, z| {
                [a * (-2.0 * (2.0 * k * y).sin() + (k * z).sin()), a * (2.0 * (k * x).sin() + (k * z).sin()), 0.0]
            });
            (u, b)
        }
        InitialCondition::Aligned(inner) => {
            let (u, _) = fields(inner, a, grid)?;
            (u.clone(), u)
        }
        InitialCondition::RandomBand { j, seed } => {
            let u = random_band(grid, *j, *seed, a)?;
            let b = random_band(grid, *j, seed.wrapping_add(0x9e37_79b9_7f4a_7c15), a)?;
            (u, b)
        }
    })
}

/// Random solenoidal field on the core `4/3 ≤ 2^{-j}|k| ≤ 2` of shell `j`.
fn random_band(grid: &Arc<Grid>, j: i32, seed: u64, amplitude: f64) -> Result<VectorFieldK> {
    let lo = 4.0 / 3.0 * (j as f64).exp2();
    let hi = 2.0 * (j as f64).exp2();
    let g = grid.clone();
    let v = transform_vector(&random_physical_vector(grid, seed)).map_modes(|i, c| {
        let r = g.kmag(i);
        if g.dealias(i) && r >= lo && r <= hi {
            c
        } else {
            [Default::default(); 3]
        }
    });
    let v = leray_project(&v);
    let norm = l2_norm_k(&v);
    if norm == 0.0 {
        return Err(Error::EmptyShell(j));
    }
    // root-mean-square amplitude: ‖v‖_2 = A · sqrt(volume)
    Ok(v.scale(amplitude * grid.volume().sqrt() / norm))
}
