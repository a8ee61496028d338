//! The discrete predictive process: an instantaneous update of X (work step)
//! followed by cascaded relaxation of the pair (relaxation step), repeated.
//!
//! At each time `t_i` the record holds the memory `I(S:X)` of the
//! pre-update state, the predictive power `I(S:X')` of the post-update
//! state, their classical/quantum splits and the lost work of the update.

use std::io::{self, Write};

use crate::channel::{apply, lift_local, update_channel, KrausChannel};
use crate::discord::discord_with_info;
use crate::dynamics::build_liouvillian;
use crate::error::{Error, Result};
use crate::info::InfoReport;
use crate::optimize::OptimizerConfig;
use crate::scalar::{tol, Real};
use crate::state::{initial_state, DensityMatrix, MeasurementBasis, Ordering, Party};
use crate::thermo::assemble_ledger;

#[derive(Debug, Clone)]
pub struct ProtocolConfig<T: Real> {
    /// Damping probability of the update channel.
    pub p: T,
    pub kappa: T,
    /// Relaxation time between updates, `t_{i+1} - t_i`.
    pub step_duration: T,
    pub n_steps: usize,
    pub beta: T,
    pub optimizer: OptimizerConfig,
    pub ordering: Ordering,
    /// Per-step update channels on X; when set, overrides `p` and must
    /// cover `n_steps` entries.
    pub channel_schedule: Option<Vec<KrausChannel<T>>>,
}

impl<T: Real> Default for ProtocolConfig<T> {
    fn default() -> Self {
        Self {
            p: T::lit(0.7),
            kappa: T::one(),
            step_duration: T::one(),
            n_steps: 10,
            beta: T::one(),
            optimizer: OptimizerConfig::default(),
            ordering: Ordering::SX,
            channel_schedule: None,
        }
    }
}

impl<T: Real> ProtocolConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.p >= T::zero() && self.p <= T::one()) {
            return Err(Error::Domain(format!("p = {} not in [0, 1]", self.p)));
        }
        if self.n_steps == 0 {
            return Err(Error::Domain("at least one step is required".into()));
        }
        if !(self.step_duration >= T::zero() && self.step_duration.is_finite()) {
            return Err(Error::Domain(format!(
                "step duration must be non-negative, got {}",
                self.step_duration
            )));
        }
        if !(self.beta > T::zero() && self.beta.is_finite()) {
            return Err(Error::Domain(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.kappa > T::zero() && self.kappa.is_finite()) {
            return Err(Error::Domain(format!("kappa must be positive, got {}", self.kappa)));
        }
        if let Some(schedule) = &self.channel_schedule {
            if schedule.len() < self.n_steps {
                return Err(Error::Domain(format!(
                    "channel schedule has {} entries for {} steps",
                    schedule.len(),
                    self.n_steps
                )));
            }
            if schedule.iter().any(|ch| ch.dim() != 2) {
                return Err(Error::InvalidDimensions("scheduled channels must act on a qubit".into()));
            }
        }
        self.optimizer.validate()
    }

    fn channel_for(&self, step: usize) -> Result<KrausChannel<T>> {
        let ch = match &self.channel_schedule {
            Some(s) => s[step].clone(),
            None => update_channel(self.p)?,
        };
        lift_local(&ch, &[2, 2], self.ordering)
    }
}

/// States on either side of the update at `t_i`.
#[derive(Debug, Clone)]
pub struct StepStates<T: Real> {
    pub pre: DensityMatrix<T>,
    pub post: DensityMatrix<T>,
}

/// Simulate the state sequence without analysis.
pub fn trajectory<T: Real>(cfg: &ProtocolConfig<T>) -> Result<Vec<StepStates<T>>> {
    cfg.validate()?;
    let generator = build_liouvillian(cfg.kappa, cfg.ordering)?;
    let relax = generator.propagator(cfg.step_duration)?;
    let drift = tol::<T>(|t| t.marginal_drift);

    let mut rho = initial_state::<T>(cfg.ordering);
    let mut out = Vec::with_capacity(cfg.n_steps);
    for step in 0..cfg.n_steps {
        let run = || -> Result<(DensityMatrix<T>, DensityMatrix<T>)> {
            let post = apply(&cfg.channel_for(step)?, &rho)?;
            let moved = rho
                .marginal(Party::S)?
                .matrix()
                .max_abs_diff(post.marginal(Party::S)?.matrix());
            if moved > drift {
                return Err(Error::Consistency(format!(
                    "S marginal changed by {moved} during the update of X"
                )));
            }
            let next = relax.apply(&post)?;
            Ok((post, next))
        };
        let (post, next) = run().map_err(|e| e.at_step(step))?;
        out.push(StepStates {
            pre: std::mem::replace(&mut rho, next),
            post,
        });
    }
    Ok(out)
}

/// Quantities recorded at one update time. Work values are `beta W / ln 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolRecord<T: Real> {
    pub step: usize,
    /// `kappa t_i`.
    pub kt: T,
    /// Memory `I(S:X; t_i)`.
    pub memory: T,
    /// Predictive power `I(S:X'; t_i)`.
    pub predictive: T,
    pub classical_pre: T,
    pub classical_post: T,
    /// `delta(S|X)` before the update.
    pub discord_pre: T,
    pub discord_post: T,
    /// `delta(X|S)` before the update.
    pub discord_xs_pre: T,
    pub discord_xs_post: T,
    pub w_lost: T,
    pub w_classical: T,
    pub w_quantum: T,
    /// Discord-minimizing basis on X before and after the update.
    pub basis_pre: MeasurementBasis<T>,
    pub basis_post: MeasurementBasis<T>,
}

/// Run the process and analyze every step.
pub fn run_protocol<T: Real>(cfg: &ProtocolConfig<T>) -> Result<Vec<ProtocolRecord<T>>> {
    let states = trajectory(cfg)?;
    let kdt = cfg.kappa * cfg.step_duration;
    states
        .iter()
        .enumerate()
        .map(|(step, st)| analyze_step(step, kdt, st, cfg).map_err(|e| e.at_step(step)))
        .collect()
}

fn analyze_step<T: Real>(
    step: usize,
    kdt: T,
    st: &StepStates<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<ProtocolRecord<T>> {
    let opt = &cfg.optimizer;
    let info_pre = InfoReport::of(&st.pre)?;
    let info_post = InfoReport::of(&st.post)?;
    let on_x_pre = discord_with_info(&st.pre, &info_pre, Party::X, opt)?;
    let on_x_post = discord_with_info(&st.post, &info_post, Party::X, opt)?;
    let on_s_pre = discord_with_info(&st.pre, &info_pre, Party::S, opt)?;
    let on_s_post = discord_with_info(&st.post, &info_post, Party::S, opt)?;
    let ledger = assemble_ledger(&info_pre, &info_post, on_x_pre, on_x_post, cfg.beta, 2)?;
    let (w_lost, w_classical, w_quantum) = ledger.in_bits();
    Ok(ProtocolRecord {
        step,
        kt: kdt * T::lit(step as f64),
        memory: info_pre.mutual_info,
        predictive: info_post.mutual_info,
        classical_pre: on_x_pre.classical_correlations,
        classical_post: on_x_post.classical_correlations,
        discord_pre: on_x_pre.discord,
        discord_post: on_x_post.discord,
        discord_xs_pre: on_s_pre.discord,
        discord_xs_post: on_s_post.discord,
        w_lost,
        w_classical,
        w_quantum,
        basis_pre: on_x_pre.argmin_basis,
        basis_post: on_x_post.argmin_basis,
    })
}

/// Column names of the CSV output, in record order.
pub const CSV_HEADER: [&str; 17] = [
    "step",
    "kt",
    "I_SX",
    "I_SXp",
    "IC_SX",
    "IC_SXp",
    "delta_SX",
    "delta_SXp",
    "delta_XS",
    "delta_XSp",
    "W_lost",
    "W_C",
    "W_Q",
    "theta_min_pre",
    "phi_min_pre",
    "theta_min_post",
    "phi_min_post",
];

/// Format with 12 significant digits, `%g` style.
pub fn format_sig12(x: f64) -> String {
    const SIG: usize = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..SIG as i32).contains(&exp) {
        let decimals = (SIG as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl<T: Real> ProtocolRecord<T> {
    /// CSV fields; angles are in degrees.
    pub fn csv_fields(&self) -> Vec<String> {
        let f = |x: T| format_sig12(x.as_f64());
        let deg = |x: T| format_sig12(x.as_f64().to_degrees());
        vec![
            self.step.to_string(),
            f(self.kt),
            f(self.memory),
            f(self.predictive),
            f(self.classical_pre),
            f(self.classical_post),
            f(self.discord_pre),
            f(self.discord_post),
            f(self.discord_xs_pre),
            f(self.discord_xs_post),
            f(self.w_lost),
            f(self.w_classical),
            f(self.w_quantum),
            deg(self.basis_pre.theta),
            deg(self.basis_pre.phi),
            deg(self.basis_post.theta),
            deg(self.basis_post.phi),
        ]
    }
}

/// Write the header and one row per record.
pub fn emit_csv<T: Real, W: Write>(records: &[ProtocolRecord<T>], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", CSV_HEADER.join(","))?;
    for r in records {
        writeln!(out, "{}", r.csv_fields().join(","))?;
    }
    Ok(())
}

pub fn to_csv_string<T: Real>(records: &[ProtocolRecord<T>]) -> String {
    let mut buf = Vec::new();
    emit_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(0.1), "0.1");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_sig12(123456.789), "123456.789");
        assert_eq!(format_sig12(1.5e-17), "1.5e-17");
        assert_eq!(format_sig12(2.5e13), "2.5e13");
        assert_eq!(format_sig12(90.0), "90");
    }

    #[test]
    fn config_validation() {
        let mut cfg = ProtocolConfig::<f64>::default();
        assert!(cfg.validate().is_ok());
        cfg.p = 1.5;
        assert!(matches!(cfg.validate(), Err(Error::Domain(_))));
        cfg.p = 0.7;
        cfg.n_steps = 0;
        assert!(cfg.validate().is_err());
        cfg.n_steps = 3;
        cfg.beta = 0.0;
        assert!(cfg.validate().is_err());
        cfg.beta = 1.0;
        cfg.step_duration = -1.0;
        assert!(cfg.validate().is_err());
        cfg.step_duration = 1.0;
        cfg.channel_schedule = Some(vec![update_channel(0.5).unwrap()]);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn header_and_single_row() {
        let cfg = ProtocolConfig::<f64> {
            n_steps: 1,
            ..Default::default()
        };
        let records = run_protocol(&cfg).unwrap();
        let csv = to_csv_string(&records);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "step,kt,I_SX,I_SXp,IC_SX,IC_SXp,delta_SX,delta_SXp,delta_XS,delta_XSp,W_lost,W_C,W_Q,theta_min_pre,phi_min_pre,theta_min_post,phi_min_post"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 17);
        assert!(row[10].parse::<f64>().unwrap().abs() < 1e-10);
        assert!(lines.next().is_none());
    }

    #[test]
    fn schedule_of_identity_channels_loses_nothing() {
        let cfg = ProtocolConfig::<f64> {
            n_steps: 3,
            channel_schedule: Some(vec![KrausChannel::identity(2); 3]),
            ..Default::default()
        };
        for r in run_protocol(&cfg).unwrap() {
            assert!(r.w_lost.abs() < 1e-10);
            assert!((r.memory - r.predictive).abs() < 1e-10);
        }
    }
}
