use std::path::Path;

use serde::{Deserialize, Serialize};

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShelekhovCase {
    A,
    D,
    E,
    F,
    G,
    H,
    J,
}

impl ShelekhovCase {
    pub const ALL: [ShelekhovCase; 7] = [
        ShelekhovCase::A,
        ShelekhovCase::D,
        ShelekhovCase::E,
        ShelekhovCase::F,
        ShelekhovCase::G,
        ShelekhovCase::H,
        ShelekhovCase::J,
    ];

    pub fn letter(self) -> char {
        match self {
            ShelekhovCase::A => 'a',
            ShelekhovCase::D => 'd',
            ShelekhovCase::E => 'e',
            ShelekhovCase::F => 'f',
            ShelekhovCase::G => 'g',
            ShelekhovCase::H => 'h',
            ShelekhovCase::J => 'j',
        }
    }
}

/// Catalog key plus its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "web", content = "params", rename_all = "kebab-case")]
pub enum WebParams {
    Pappus { r: Point, g: Point, b: Point },
    Brianchon { conic: Conic, vertex: Point },
    Blaschke { a: Point, b: Point, c: Point },
    BlaschkePerturbed { a: Point, b: Point, c: Point, shift: Point },
    GrafSauer { coeffs: [f64; 10] },
    VolkStrubecker { r: Point, g: Point, b: Point, darboux: DarbouxConfig },
    Apollonian { pencil: PencilSpec, set1: ApollonianSet, set2: ApollonianSet },
    Shelekhov { case: ShelekhovCase, red: PencilSpec, green: PencilSpec, blue: PencilSpec },
    MainA { center: Point, radius: f64, normal: Point },
    MainB { conic: Conic },
    MainC { conic: Conic, focus: Focus },
    MainD { conic: Conic, l: Point },
    MainE { conic: Conic },
    EllipticSwap { conic: Conic },
    EllipticSwapParabola { conic: Conic, l: Point },
    CubicSeries,
}

impl WebParams {
    pub fn key(&self) -> &'static str {
        match self {
            WebParams::Pappus { .. } => "pappus",
            WebParams::Brianchon { .. } => "brianchon",
            WebParams::Blaschke { .. } => "blaschke",
            WebParams::BlaschkePerturbed { .. } => "blaschke-perturbed",
            WebParams::GrafSauer { .. } => "graf-sauer",
            WebParams::VolkStrubecker { .. } => "volk-strubecker",
            WebParams::Apollonian { .. } => "apollonian",
            WebParams::Shelekhov { .. } => "shelekhov",
            WebParams::MainA { .. } => "main-a",
            WebParams::MainB { .. } => "main-b",
            WebParams::MainC { .. } => "main-c",
            WebParams::MainD { .. } => "main-d",
            WebParams::MainE { .. } => "main-e",
            WebParams::EllipticSwap { .. } => "elliptic-swap",
            WebParams::EllipticSwapParabola { .. } => "elliptic-swap-parabola",
            WebParams::CubicSeries => "cubic-series",
        }
    }
}

/// A web as stored on disk: parameters and a validated domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WebConfig {
    /// Skip parameter preconditions (used by negative controls).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bypass_validation: bool,
    #[serde(flatten)]
    pub params: WebParams,
    pub domain: Domain,
}

impl WebConfig {
    pub fn build(&self) -> Result<Web3> {
        let d = self.domain.clone();
        if !(d.radius > 0.0) || !d.center.is_finite() {
            return Err(Error::InvalidConfig("domain radius must be positive".into()));
        }
        let check = !self.bypass_validation;
        match &self.params {
            WebParams::Pappus { r, g, b } => pappus_web(*r, *g, *b, d),
            WebParams::Brianchon { conic, vertex } => brianchon_web(*conic, *vertex, d),
            WebParams::Blaschke { a, b, c } => blaschke_web(*a, *b, *c, d),
            WebParams::BlaschkePerturbed { a, b, c, shift } => blaschke_perturbed_web(*a, *b, *c, *shift, d),
            WebParams::GrafSauer { coeffs } => graf_sauer_web(*coeffs, d),
            WebParams::VolkStrubecker { r, g, b, darboux } => volk_strubecker_web(*r, *g, *b, *darboux, d),
            WebParams::Apollonian { pencil, set1, set2 } => apollonian_web(pencil, set1, set2, d),
            WebParams::Shelekhov { case, red, green, blue } => shelekhov_web(*case, &[*red, *green, *blue], d, check),
            WebParams::MainA { center, radius, normal } => main_a_web(*center, *radius, *normal, d),
            WebParams::MainB { conic } => main_b_web(*conic, d),
            WebParams::MainC { conic, focus } => main_c_web(*conic, *focus, d),
            WebParams::MainD { conic, l } => main_d_web(*conic, *l, d),
            WebParams::MainE { conic } => main_e_web(*conic, d, check),
            WebParams::EllipticSwap { conic } => elliptic_swap_web(*conic, d),
            WebParams::EllipticSwapParabola { conic, l } => elliptic_swap_parabola_web(*conic, *l, d),
            WebParams::CubicSeries => cubic_series_web(d),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }
}
