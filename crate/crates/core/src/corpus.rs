//! Built-in benchmark problems with their published reference numbers.

use thiserror::Error;

use crate::greens::CaseId;
use crate::problem::{Boundary, DomainKind, ProblemSpec};
use crate::scalar::{lit, Real};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown problem `{0}` (available: {names})", names = NAMES.join(", "))]
    UnknownProblem(String),
}

/// A published value together with where it comes from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reported<V = f64> {
    pub value: V,
    pub source: &'static str,
}

const fn rep<V>(value: V, source: &'static str) -> Reported<V> {
    Reported { value, source }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reference {
    pub bound: Reported,
    /// `(L0, L1, L2)` as printed.
    pub lipschitz: Option<Reported<[f64; 3]>>,
    pub q: Option<Reported>,
    pub iterations: Reported<usize>,
    /// Printed envelope for `u`, `u'`, `|u''|`.
    pub envelope: Reported<[f64; 3]>,
    pub max_deviation: Option<Reported>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry<T: Real> {
    pub name: &'static str,
    pub equation: &'static str,
    pub case: CaseId,
    pub problem: ProblemSpec<T>,
    pub reference: Reference,
}

pub const NAMES: [&str; 6] = ["yao-feng-7", "yao-feng-8", "feng-liu-4.2", "dqa1", "dqa", "bai-3.5"];

/// `(name, case, has_exact)` for every registered problem.
pub fn list_problems() -> Vec<(&'static str, CaseId, bool)> {
    NAMES
        .iter()
        .map(|name| {
            let e = get_problem::<f64>(name).expect("registered name");
            (e.name, e.case, e.problem.has_exact())
        })
        .collect()
}

pub fn get_problem<T: Real>(name: &str) -> Result<CorpusEntry<T>, CorpusError> {
    let entry = match name {
        "yao-feng-7" => yao_feng_7(),
        "yao-feng-8" => yao_feng_8(),
        "feng-liu-4.2" => feng_liu_42(),
        "dqa1" => dqa1(),
        "dqa" => dqa(),
        "bai-3.5" => bai_35(),
        other => return Err(CorpusError::UnknownProblem(other.to_string())),
    };
    Ok(entry)
}

/// Every registered problem.
pub fn all<T: Real>() -> Vec<CorpusEntry<T>> {
    NAMES.iter().map(|n| get_problem(n).expect("registered name")).collect()
}

fn positive_problem<T: Real, F>(f: F, case: CaseId, m: f64) -> ProblemSpec<T>
where
    F: Fn(T, T, T, T) -> T + Send + Sync + 'static,
{
    ProblemSpec::new(f, Boundary::Case(case))
        .with_domain(DomainKind::Positive)
        .with_bound(lit(m))
        .expect("positive bound")
}

fn yao_feng_7<T: Real>() -> CorpusEntry<T> {
    let m = 1.1;
    let problem = positive_problem(|_, x: T, _, _| -x.exp(), CaseId::Case1, m)
        .with_lipschitz([lit::<T>(m / 12.0).exp(), T::zero(), T::zero()], lit(m))
        .expect("nonnegative constants");
    CorpusEntry {
        name: "yao-feng-7",
        equation: "u''' = -exp(u)",
        case: CaseId::Case1,
        problem,
        reference: Reference {
            bound: rep(1.1, "chosen bound M"),
            lipschitz: Some(rep([1.096, 0.0, 0.0], "L0 = exp(M/12)")),
            q: Some(rep(0.0913, "q = L0/12")),
            iterations: rep(5, "reported iteration count"),
            // u' bound printed as 0.1357; M/8 = 0.1375
            envelope: rep([0.0917, 0.1375, 0.55], "M/12, M/8, M/2"),
            max_deviation: None,
        },
    }
}

fn yao_feng_8<T: Real>() -> CorpusEntry<T> {
    let (three, four, five) = (lit::<T>(3.0), lit::<T>(4.0), lit::<T>(5.0));
    let problem = positive_problem(
        move |_, x: T, _, _| -(five * x * x * x + four * x + three) / (x * x + T::one()),
        CaseId::Case1,
        4.1,
    );
    CorpusEntry {
        name: "yao-feng-8",
        equation: "u''' = -(5u^3 + 4u + 3)/(u^2 + 1)",
        case: CaseId::Case1,
        problem,
        reference: Reference {
            bound: rep(4.1, "bound implied by the printed envelope (M/12 = 0.3417)"),
            lipschitz: None,
            q: None,
            iterations: rep(8, "reported iteration count"),
            envelope: rep([0.3417, 0.5125, 2.05], "printed envelope"),
            max_deviation: None,
        },
    }
}

fn feng_liu_42<T: Real>() -> CorpusEntry<T> {
    let problem = positive_problem(|_, x: T, y: T, _| -x.exp() - y.exp(), CaseId::Case1, 2.7);
    CorpusEntry {
        name: "feng-liu-4.2",
        equation: "u''' = -exp(u) - exp(u')",
        case: CaseId::Case1,
        problem,
        reference: Reference {
            bound: rep(2.7, "chosen bound M"),
            lipschitz: None,
            q: None,
            iterations: rep(9, "reported iteration count"),
            envelope: rep([0.2250, 0.3375, 1.350], "printed envelope"),
            max_deviation: None,
        },
    }
}

fn dqa1<T: Real>() -> CorpusEntry<T> {
    let m = 7.5;
    let (c36, c24, c4, c6, c3) = (lit::<T>(36.0), lit::<T>(24.0), lit::<T>(4.0), lit::<T>(6.0), lit::<T>(3.0));
    let problem = positive_problem(
        move |t: T, x: T, y: T, z: T| -y * y / c36 + x * z / c24 + t * t / c4 - c6,
        CaseId::Case2,
        m,
    )
    // |z|/24 <= M/24, |y|/18 <= M/36, |x|/24 <= M/72 on the admissible box
    .with_lipschitz([lit(m / 24.0), lit(m / 36.0), lit(m / 72.0)], lit(m))
    .expect("nonnegative constants")
    .with_exact(move |t: T| -t * t * t + c3 * t * t);
    CorpusEntry {
        name: "dqa1",
        equation: "u''' = -(u')^2/36 + u u''/24 + t^2/4 - 6",
        case: CaseId::Case2,
        problem,
        reference: Reference {
            bound: rep(7.5, "chosen bound M"),
            lipschitz: Some(rep([0.3125, 0.2083, 0.1042], "printed constants in (x, y, z) order")),
            q: None,
            iterations: rep(5, "reported iteration count"),
            envelope: rep([2.5, 3.75, 7.5], "printed envelope"),
            max_deviation: Some(rep(3.7665e-4, "reported maximal deviation at h = 0.01")),
        },
    }
}

fn dqa<T: Real>() -> CorpusEntry<T> {
    let m = 8.0;
    let (c18, c12, c2, c11, c3) = (lit::<T>(18.0), lit::<T>(12.0), lit::<T>(2.0), lit::<T>(5.5), lit::<T>(3.0));
    let problem = positive_problem(
        move |t: T, x: T, y: T, z: T| y * y / c18 - x * z / c12 + t / c2 + c11,
        CaseId::Case3,
        m,
    )
    // |z|/12 <= M/12, |y|/9 <= M/18, |x|/12 <= M/72
    .with_lipschitz([lit(m / 12.0), lit(m / 18.0), lit(m / 72.0)], lit(m))
    .expect("nonnegative constants")
    .with_exact(move |t: T| t * t * t - c3 * t * t + c3 * t);
    CorpusEntry {
        name: "dqa",
        equation: "u''' = (u')^2/18 - u u''/12 + t/2 + 11/2",
        case: CaseId::Case3,
        problem,
        reference: Reference {
            bound: rep(8.0, "chosen bound M"),
            lipschitz: Some(rep([2.0 / 3.0, 4.0 / 9.0, 1.0 / 9.0], "printed constants in (x, y, z) order")),
            q: None,
            iterations: rep(6, "reported iteration count"),
            envelope: rep([4.0 / 3.0, 4.0, 8.0], "printed envelope"),
            max_deviation: Some(rep(3.6256e-4, "reported maximal deviation at h = 0.01")),
        },
    }
}

fn bai_35<T: Real>() -> CorpusEntry<T> {
    let m = 0.835;
    let quarter = lit::<T>(0.25);
    let problem = positive_problem(
        move |t: T, x: T, y: T, z: T| -quarter * (t + x.exp() + y * y + z),
        CaseId::Case4,
        m,
    )
    // exp(x)/4 <= exp(M/3)/4; |y|/2 <= M/4 <= 1/4; |df/dz| = 1/4
    .with_lipschitz([lit::<T>(m / 3.0).exp() * quarter, quarter, quarter], lit(m))
    .expect("nonnegative constants");
    CorpusEntry {
        name: "bai-3.5",
        equation: "u''' = -(t + exp(u) + (u')^2 + u'')/4",
        case: CaseId::Case4,
        problem,
        reference: Reference {
            bound: rep(0.835, "chosen bound M"),
            lipschitz: Some(rep([0.3302, 0.2087, 1.0], "printed constants")),
            q: Some(rep(0.4851, "q = L0/3 + L1/2 + L2")),
            iterations: rep(5, "reported iteration count"),
            envelope: rep([0.2783, 0.5, 1.0], "printed envelope"),
            max_deviation: None,
        },
    }
}
