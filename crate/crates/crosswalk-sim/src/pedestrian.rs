//! Pedestrian types, speed distributions, and the coupled speed/radius
//! reduction schedule.
//!
//! Each pedestrian carries a reduction index `i ∈ [0, 100]` that linearly
//! interpolates both walking speed and occupied-circle radius between their
//! maxima (i = 0) and minima (i = 100): slower walkers occupy less space,
//! which is what lets crowds thread through tight gaps.

use crate::error::Error;
use crate::geometry::Point;
use crate::world::Side;
use crate::Result;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// The pedestrian categories the simulator distinguishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PedestrianKind {
    HealthyAdult,
    Elder,
    Child,
    CrutchesUser,
    WheelchairUser,
}

impl PedestrianKind {
    pub const ALL: [PedestrianKind; 5] = [
        PedestrianKind::HealthyAdult,
        PedestrianKind::Elder,
        PedestrianKind::Child,
        PedestrianKind::CrutchesUser,
        PedestrianKind::WheelchairUser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PedestrianKind::HealthyAdult => "healthy_adult",
            PedestrianKind::Elder => "elder",
            PedestrianKind::Child => "child",
            PedestrianKind::CrutchesUser => "crutches_user",
            PedestrianKind::WheelchairUser => "wheelchair_user",
        }
    }
}

impl std::fmt::Display for PedestrianKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PedestrianKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PedestrianKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::validation("type", format!("unknown pedestrian type `{s}`")))
    }
}

/// Speed and footprint parameters for one pedestrian category.
///
/// Speeds are stored in both forms: the distribution moments (μ, σ) and the
/// bounds (max, min) tied together by `max = μ + 3σ`, `min = μ − 3σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PedestrianType {
    pub kind: PedestrianKind,
    pub mu_speed: f64,
    pub sigma_speed: f64,
    pub max_speed: f64,
    pub min_speed: f64,
    pub max_radius: f64,
    pub min_radius: f64,
}

impl PedestrianType {
    /// Builds a type from speed bounds, deriving (μ, σ).
    pub fn from_bounds(
        kind: PedestrianKind,
        max_speed: f64,
        min_speed: f64,
        max_radius: f64,
        min_radius: f64,
    ) -> Result<Self> {
        let (mu, sigma) = speed_params_from_bounds(max_speed, min_speed)?;
        Self::validated(kind, mu, sigma, max_speed, min_speed, max_radius, min_radius)
    }

    /// Builds a type from distribution moments, deriving the bounds.
    pub fn from_moments(
        kind: PedestrianKind,
        mu_speed: f64,
        sigma_speed: f64,
        max_radius: f64,
        min_radius: f64,
    ) -> Result<Self> {
        if sigma_speed < 0.0 {
            return Err(Error::validation("sigma", "speed σ must be non-negative"));
        }
        let max_speed = mu_speed + 3.0 * sigma_speed;
        let min_speed = mu_speed - 3.0 * sigma_speed;
        Self::validated(
            kind,
            mu_speed,
            sigma_speed,
            max_speed,
            min_speed,
            max_radius,
            min_radius,
        )
    }

    fn validated(
        kind: PedestrianKind,
        mu_speed: f64,
        sigma_speed: f64,
        max_speed: f64,
        min_speed: f64,
        max_radius: f64,
        min_radius: f64,
    ) -> Result<Self> {
        if min_speed < 0.0 {
            return Err(Error::validation(
                "min_speed",
                format!("{min_speed} m/s is negative"),
            ));
        }
        if !(max_radius >= min_radius) || !(min_radius > 0.0) {
            return Err(Error::validation(
                "radius",
                format!("need max_radius ≥ min_radius > 0, got {max_radius}/{min_radius}"),
            ));
        }
        Ok(PedestrianType {
            kind,
            mu_speed,
            sigma_speed,
            max_speed,
            min_speed,
            max_radius,
            min_radius,
        })
    }

    /// Walking-speed preset measured on thirty adults in the field:
    /// N(1.2676, 0.09167) m/s.
    pub fn field_adult() -> Self {
        PedestrianType::from_moments(PedestrianKind::HealthyAdult, 1.2676, 0.09167, 0.30, 0.20)
            .expect("preset parameters are valid")
    }

    /// Engineering default parameter table. Only the field-adult speed
    /// preset is backed by measurements; everything else is a documented
    /// default meant to be overridden from the scenario file.
    pub fn default_for(kind: PedestrianKind) -> Self {
        let build = |max_s: f64, min_s: f64, max_r: f64, min_r: f64| {
            PedestrianType::from_bounds(kind, max_s, min_s, max_r, min_r)
                .expect("default parameters are valid")
        };
        match kind {
            PedestrianKind::HealthyAdult => build(1.8, 0.6, 0.30, 0.20),
            PedestrianKind::Elder => build(1.2, 0.4, 0.28, 0.20),
            PedestrianKind::Child => build(1.6, 0.5, 0.25, 0.16),
            PedestrianKind::CrutchesUser => build(0.9, 0.3, 0.35, 0.30),
            // Wheelchairs keep a fixed footprint: the frame does not shrink
            // when rolling slower, and the step often stays shorter than
            // the radius.
            PedestrianKind::WheelchairUser => build(1.1, 0.4, 0.45, 0.45),
        }
    }
}

/// Inverts `max = μ + 3σ`, `min = μ − 3σ`: μ = (max+min)/2, σ = (max−min)/6.
pub fn speed_params_from_bounds(max_speed: f64, min_speed: f64) -> Result<(f64, f64)> {
    if !(max_speed > min_speed) {
        return Err(Error::validation(
            "max_speed",
            format!("max_speed {max_speed} must exceed min_speed {min_speed}"),
        ));
    }
    Ok(((max_speed + min_speed) / 2.0, (max_speed - min_speed) / 6.0))
}

/// Draws a base walking speed from N(μ, σ), clamped to [min, max].
///
/// Clamping (rather than rejection sampling) keeps the per-agent draw count
/// fixed, so seed reproducibility does not depend on rejection counts.
pub fn sample_base_speed<R: Rng>(ped_type: &PedestrianType, rng: &mut R) -> f64 {
    if ped_type.sigma_speed <= 0.0 {
        return ped_type.mu_speed;
    }
    let draw = Normal::new(ped_type.mu_speed, ped_type.sigma_speed)
        .expect("validated σ")
        .sample(rng);
    draw.clamp(ped_type.min_speed, ped_type.max_speed)
}

/// Speed at reduction index `i`: linear from `ceiling` (i = 0) down to
/// `min_speed` (i = 100).
pub fn effective_speed(ceiling: f64, min_speed: f64, reduction_i: u32) -> f64 {
    debug_assert!(reduction_i <= 100);
    ceiling - (ceiling - min_speed) * reduction_i as f64 / 100.0
}

/// Occupied-circle radius at reduction index `i`: linear from `max_radius`
/// (i = 0) down to `min_radius` (i = 100, the standing footprint).
pub fn effective_radius(max_radius: f64, min_radius: f64, reduction_i: u32) -> f64 {
    debug_assert!(reduction_i <= 100);
    max_radius - (max_radius - min_radius) * reduction_i as f64 / 100.0
}

/// What a pedestrian did in the step just recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PedState {
    /// Standing at the sampled position before the first step.
    Waiting,
    Crossing,
    ReEntering,
    StuckTilting,
    Done,
}

impl PedState {
    pub fn label(self) -> &'static str {
        match self {
            PedState::Waiting => "waiting",
            PedState::Crossing => "crossing",
            PedState::ReEntering => "reentering",
            PedState::StuckTilting => "stuck_tilting",
            PedState::Done => "done",
        }
    }
}

impl std::str::FromStr for PedState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            PedState::Waiting,
            PedState::Crossing,
            PedState::ReEntering,
            PedState::StuckTilting,
            PedState::Done,
        ]
        .into_iter()
        .find(|st| st.label() == s)
        .ok_or_else(|| Error::Format {
            kind: "trace",
            message: format!("unknown state `{s}`"),
        })
    }
}

/// Full per-agent simulation state.
#[derive(Debug, Clone)]
pub struct Pedestrian {
    pub id: u32,
    pub kind: PedestrianKind,
    pub side: Side,
    pub position: Point,
    /// Base speed sampled once at spawn; the agent's own ceiling.
    pub base_speed: f64,
    pub min_speed: f64,
    pub max_radius: f64,
    pub min_radius: f64,
    /// Reduction index used for the last committed move.
    pub reduction_i: u32,
    /// Consecutive steps without movement.
    pub stuck_count: u32,
    pub state: PedState,
    /// Radius the agent currently presents to others.
    pub current_radius: f64,
    /// Realized speed in the last step (m/s).
    pub last_speed: f64,
    pub crossing_start_step: u32,
    pub crossing_end_step: Option<u32>,
}

impl Pedestrian {
    pub fn new(
        id: u32,
        ped_type: &PedestrianType,
        side: Side,
        position: Point,
        base_speed: f64,
    ) -> Self {
        Pedestrian {
            id,
            kind: ped_type.kind,
            side,
            position,
            base_speed,
            min_speed: ped_type.min_speed.min(base_speed),
            max_radius: ped_type.max_radius,
            min_radius: ped_type.min_radius,
            reduction_i: 0,
            stuck_count: 0,
            state: PedState::Waiting,
            current_radius: ped_type.min_radius,
            last_speed: 0.0,
            crossing_start_step: 0,
            crossing_end_step: None,
        }
    }
}
