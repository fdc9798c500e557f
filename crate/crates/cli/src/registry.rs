use ritz_lagrange::problems::{BasisVariant, ProblemId, ProblemSpec};

/// A unit of work inside a preset.
#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    /// Static solves, one row per `(N, s)`.
    Sweep {
        spec: ProblemSpec,
        pairs: Vec<(usize, usize)>,
    },
    /// Plate vibration block against the exact simply supported values.
    Frequencies {
        spec: ProblemSpec,
        n: usize,
        s: usize,
    },
    /// Tau and boundary-term systems of the first problem.
    Tau,
    /// Sobolev residuals of `x²` in the cosine and augmented families.
    Completeness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub experiments: Vec<Experiment>,
}

pub const PRESET_NAMES: [&str; 7] = [
    "table1",
    "table2",
    "table3",
    "frequencies",
    "tau-demo",
    "completeness-demo",
    "monotonicity-demo",
];

fn sweep(spec: ProblemSpec, pairs: &[(usize, usize)]) -> Experiment {
    Experiment::Sweep {
        spec,
        pairs: pairs.to_vec(),
    }
}

pub fn preset(name: &str) -> Option<Preset> {
    let p5 = || ProblemSpec::new(ProblemId::P5);
    let (description, experiments) = match name {
        "table1" => (
            "disk membrane, monomial basis",
            vec![sweep(
                ProblemSpec::new(ProblemId::P4),
                &[(3, 2), (4, 3), (5, 4)],
            )],
        ),
        "table2" => (
            "square plate, cosine products, against the clamped plate",
            vec![sweep(p5(), &[(4, 2), (6, 3), (8, 4), (10, 5)])],
        ),
        "table3" => (
            "square plate, augmented cosine products, against the simply supported plate",
            vec![sweep(
                p5().with_variant(BasisVariant::Augmented),
                &[(5, 2), (6, 3), (8, 4), (10, 5)],
            )],
        ),
        "frequencies" => (
            "simply supported plate frequencies, m, n ≤ 3",
            vec![Experiment::Frequencies {
                spec: ProblemSpec::new(ProblemId::P6),
                n: 10,
                s: 5,
            }],
        ),
        "tau-demo" => (
            "tau and boundary-term systems for u'' = 1",
            vec![Experiment::Tau],
        ),
        "completeness-demo" => ("Sobolev residuals of x²", vec![Experiment::Completeness]),
        "monotonicity-demo" => (
            "energy in N for the first problem and in s for the disk",
            vec![
                sweep(
                    ProblemSpec::new(ProblemId::P1),
                    &[(5, 0), (10, 0), (20, 0), (40, 0)],
                ),
                sweep(
                    ProblemSpec::new(ProblemId::P4),
                    &[(6, 2), (6, 3), (6, 4), (6, 5)],
                ),
            ],
        ),
        _ => return None,
    };
    Some(Preset {
        name: PRESET_NAMES.iter().find(|&&p| p == name)?,
        description,
        experiments,
    })
}
