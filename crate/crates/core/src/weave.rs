//! Interleavings of several families across index partitions.
//!
//! Given `m` families sharing one index set of size `n`, a partition assigns
//! each index to one family; the resulting interleaved family takes its
//! `i`-th vector from the family the partition chose for `i`. The sweep
//! routines score every partition (exhaustively when `mⁿ` fits the budget,
//! by seeded sampling otherwise) and report the universal bounds, the worst
//! partition, and a witness vector attaining the universal lower bound.
//!
//! A sampled sweep can refute but never certify: the verdict is only `true`
//! when the sweep was exhaustive and the universal lower bound is positive.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::FrameFamily;
use crate::numeric::eig::hermitian_eig;
use crate::numeric::matrix::{normalized, ComplexMatrix};
use crate::numeric::pencil::{whitener, Whitener};
use crate::numeric::pinv::range_basis;
use crate::random::seeded_rng;
use crate::{FRAME_TOL, HERMITIAN_TOL, RANK_TOL};

use rand::Rng;

/// An assignment of `n` indices to `m` families (values `0..m`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    m: usize,
    assign: Vec<usize>,
}

impl Partition {
    /// Validates that `assign` has length `n` with every value below `m`.
    pub fn new(n: usize, m: usize, assign: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyFamily);
        }
        if assign.len() != n {
            return Err(Error::LengthMismatch {
                context: format!("partition over {} indices got {} assignments", n, assign.len()),
            });
        }
        if let Some((i, &v)) = assign.iter().enumerate().find(|&(_, &v)| v >= m) {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "partition assigns index {} to family {} but only {} families exist",
                    i,
                    v + 1,
                    m
                ),
            });
        }
        Ok(Self { n, m, assign })
    }

    /// The partition sending every index to one family.
    pub fn pure(n: usize, m: usize, family: usize) -> Result<Self> {
        Self::new(n, m, vec![family; n])
    }

    /// Number of indices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of families.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Family choice per index, zero-based.
    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    /// Compact rendering: for two families, a bitmask with `'1'` where the
    /// first family is chosen; otherwise one-based assignments in parens.
    pub fn render(&self) -> String {
        if self.m == 2 {
            self.assign.iter().map(|&a| if a == 0 { '1' } else { '0' }).collect()
        } else {
            let parts: Vec<String> = self.assign.iter().map(|&a| (a + 1).to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

/// Budget and seed for a partition sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Exhaustive enumeration when the partition count does not exceed this;
    /// otherwise this many sampled partitions (plus the pure ones).
    pub budget: u64,
    /// Seed for the sampling stream; irrelevant to exhaustive sweeps.
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { budget: crate::DEFAULT_BUDGET, seed: 0 }
    }
}

/// Outcome of a partition sweep.
#[derive(Clone, Debug)]
pub struct WeavingReport {
    /// Smallest lower bound over all checked interleavings.
    pub universal_lower: f64,
    /// Largest upper bound over all checked interleavings.
    pub universal_upper: f64,
    /// True when the sweep was exhaustive and the universal lower bound is
    /// positive; a sampled sweep never certifies.
    pub verdict: bool,
    /// First partition (in enumeration order) attaining the universal lower
    /// bound.
    pub worst_partition: Partition,
    /// Unit vector attaining the universal lower bound under the worst
    /// partition.
    pub witness: Vec<Complex64>,
    /// Number of partitions evaluated.
    pub partitions_checked: u64,
    /// Whether every partition was evaluated.
    pub exhaustive: bool,
}

fn check_families(families: &[FrameFamily]) -> Result<(usize, usize)> {
    let first = families.first().ok_or(Error::EmptyFamily)?;
    let (dim, n) = (first.dim(), first.len());
    for (j, f) in families.iter().enumerate().skip(1) {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: format!("family {} has dimension {}, family 1 has {}", j + 1, f.dim(), dim),
            });
        }
        if f.len() != n {
            return Err(Error::LengthMismatch {
                context: format!("family {} has {} vectors, family 1 has {}", j + 1, f.len(), n),
            });
        }
    }
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    Ok((dim, n))
}

/// Assembles the interleaved family selected by a partition.
pub fn weave(families: &[FrameFamily], p: &Partition) -> Result<FrameFamily> {
    let (dim, n) = check_families(families)?;
    if p.n() != n {
        return Err(Error::LengthMismatch {
            context: format!("partition covers {} indices, families have {}", p.n(), n),
        });
    }
    if p.m() != families.len() {
        return Err(Error::DimensionMismatch {
            context: format!("partition expects {} families, got {}", p.m(), families.len()),
        });
    }
    let vectors: Vec<Vec<Complex64>> =
        p.assign().iter().enumerate().map(|(i, &j)| families[j].vector(i).to_vec()).collect();
    FrameFamily::new(dim, vectors)
}

/// How a sweep scores one interleaving.
enum Scoring {
    /// Lower and upper are the extremal eigenvalues of the (possibly
    /// compressed) interleaving operator.
    Plain,
    /// Lower is the smallest whitened-pencil eigenvalue; upper stays the
    /// largest eigenvalue of the interleaving operator.
    Weighted(Whitener),
}

struct Sweep<'a> {
    families: &'a [FrameFamily],
    /// Projections of every family vector onto the sweep domain,
    /// `projected[j][i] = U* f_i` for family `j`.
    projected: Vec<Vec<Vec<Complex64>>>,
    /// Whitened projections for weighted scoring, `whitened[j][i] = W* U* f_i`.
    whitened: Vec<Vec<Vec<Complex64>>>,
    basis: Option<ComplexMatrix>,
    scoring: Scoring,
    sub_dim: usize,
}

impl<'a> Sweep<'a> {
    fn prepare(
        families: &'a [FrameFamily],
        subspace: Option<&ComplexMatrix>,
        weight: Option<&ComplexMatrix>,
    ) -> Result<Self> {
        let (dim, _) = check_families(families)?;
        let basis = match subspace {
            None => None,
            Some(space) => {
                if space.rows() != dim {
                    return Err(Error::DimensionMismatch {
                        context: format!(
                            "subspace lives in dimension {} but the families in {}",
                            space.rows(),
                            dim
                        ),
                    });
                }
                Some(range_basis(space, RANK_TOL)?.ok_or(Error::ZeroSubspace)?)
            }
        };
        let sub_dim = basis.as_ref().map_or(dim, |u| u.cols());

        let project = |v: &[Complex64]| -> Result<Vec<Complex64>> {
            match &basis {
                None => Ok(v.to_vec()),
                Some(u) => u.adjoint_matvec(v),
            }
        };
        let mut projected = Vec::with_capacity(families.len());
        for f in families {
            let mut per_family = Vec::with_capacity(f.len());
            for v in f.vectors() {
                per_family.push(project(v)?);
            }
            projected.push(per_family);
        }

        let scoring = match weight {
            None => Scoring::Plain,
            Some(k) => {
                if !k.is_square() || k.rows() != dim {
                    return Err(Error::DimensionMismatch {
                        context: format!(
                            "weight operator is {}x{} but the families live in dimension {}",
                            k.rows(),
                            k.cols(),
                            dim
                        ),
                    });
                }
                let kk = k.mul(&k.adjoint())?;
                let m2 = match &basis {
                    None => kk,
                    Some(u) => {
                        let raw = u.adjoint().mul(&kk)?.mul(u)?;
                        raw.add(&raw.adjoint())?.scaled(Complex64::new(0.5, 0.0))?
                    }
                };
                match whitener(&m2, RANK_TOL) {
                    Err(Error::ZeroPencil) => return Err(Error::ZeroK),
                    Err(e) => return Err(e),
                    Ok(w) => Scoring::Weighted(w),
                }
            }
        };

        let whitened = match &scoring {
            Scoring::Plain => Vec::new(),
            Scoring::Weighted(white) => {
                let mut all = Vec::with_capacity(families.len());
                for per_family in &projected {
                    let mut rows = Vec::with_capacity(per_family.len());
                    for g in per_family {
                        rows.push(white.w.adjoint_matvec(g)?);
                    }
                    all.push(rows);
                }
                all
            }
        };

        Ok(Self { families, projected, whitened, basis, scoring, sub_dim })
    }

    /// Lower and upper score of one partition.
    fn score(&self, assign: &[usize]) -> Result<(f64, f64)> {
        let mut s = ComplexMatrix::zeros(self.sub_dim, self.sub_dim);
        for (i, &j) in assign.iter().enumerate() {
            s.add_outer(&self.projected[j][i], 1.0);
        }
        let eig = hermitian_eig(&s, HERMITIAN_TOL)?;
        let upper = eig.values[eig.values.len() - 1].max(0.0);
        let lower = match &self.scoring {
            Scoring::Plain => eig.values[0].max(0.0),
            Scoring::Weighted(white) => {
                let kept = white.w.cols();
                let mut b = ComplexMatrix::zeros(kept, kept);
                for (i, &j) in assign.iter().enumerate() {
                    b.add_outer(&self.whitened[j][i], 1.0);
                }
                hermitian_eig(&b, HERMITIAN_TOL)?.values[0].max(0.0)
            }
        };
        Ok((lower, upper))
    }

    /// Ambient unit vector attaining the lower score of one partition.
    fn witness(&self, assign: &[usize]) -> Result<Vec<Complex64>> {
        let inner = match &self.scoring {
            Scoring::Plain => {
                let mut s = ComplexMatrix::zeros(self.sub_dim, self.sub_dim);
                for (i, &j) in assign.iter().enumerate() {
                    s.add_outer(&self.projected[j][i], 1.0);
                }
                hermitian_eig(&s, HERMITIAN_TOL)?.vectors.column(0)
            }
            Scoring::Weighted(white) => {
                let kept = white.w.cols();
                let mut b = ComplexMatrix::zeros(kept, kept);
                for (i, &j) in assign.iter().enumerate() {
                    b.add_outer(&self.whitened[j][i], 1.0);
                }
                let y = hermitian_eig(&b, HERMITIAN_TOL)?.vectors.column(0);
                white.w.matvec(&y)?
            }
        };
        let ambient = match &self.basis {
            None => inner,
            Some(u) => u.matvec(&inner)?,
        };
        Ok(normalized(&ambient))
    }

    fn run(&self, opts: SweepOptions) -> Result<WeavingReport> {
        if opts.budget == 0 {
            return Err(Error::BudgetZero);
        }
        let n = self.families[0].len();
        let m = self.families.len();
        let total = (m as u128).checked_pow(n as u32);
        let exhaustive = matches!(total, Some(t) if t <= opts.budget as u128);

        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut universal_upper = 0.0_f64;
        let mut checked = 0_u64;

        let mut consider = |assign: &[usize], sweep: &Self| -> Result<()> {
            let (lower, upper) = sweep.score(assign)?;
            checked += 1;
            if upper > universal_upper {
                universal_upper = upper;
            }
            let replace = match &best {
                None => true,
                Some((bl, ba)) => lower < *bl || (lower == *bl && assign < ba.as_slice()),
            };
            if replace {
                best = Some((lower, assign.to_vec()));
            }
            Ok(())
        };

        if exhaustive {
            let mut assign = vec![0_usize; n];
            loop {
                consider(&assign, self)?;
                // Advance the odometer, last index fastest, so partitions
                // appear in lexicographic order.
                let mut pos = n;
                while pos > 0 {
                    pos -= 1;
                    assign[pos] += 1;
                    if assign[pos] < m {
                        break;
                    }
                    assign[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
        } else {
            for family in 0..m {
                let assign = vec![family; n];
                consider(&assign, self)?;
            }
            let mut rng = seeded_rng(opts.seed);
            for _ in 0..opts.budget {
                let assign: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
                consider(&assign, self)?;
            }
        }

        let (universal_lower, worst_assign) = best.expect("at least one partition is checked");
        let witness = self.witness(&worst_assign)?;
        Ok(WeavingReport {
            universal_lower,
            universal_upper,
            verdict: exhaustive && universal_lower > FRAME_TOL,
            worst_partition: Partition::new(n, m, worst_assign)?,
            witness,
            partitions_checked: checked,
            exhaustive,
        })
    }
}

/// Sweeps all interleavings of `families`, scoring each by its optimal
/// frame bounds — over the whole space, or over the column space of
/// `subspace` when given.
pub fn woven_report(
    families: &[FrameFamily],
    subspace: Option<&ComplexMatrix>,
    opts: SweepOptions,
) -> Result<WeavingReport> {
    Sweep::prepare(families, subspace, None)?.run(opts)
}

/// Sweeps all interleavings of `families`, scoring each lower bound against
/// the weight operator `k` (smallest pencil eigenvalue) and each upper bound
/// as the plain Bessel constant, optionally restricted to a subspace.
pub fn kwoven_report(
    families: &[FrameFamily],
    k: &ComplexMatrix,
    subspace: Option<&ComplexMatrix>,
    opts: SweepOptions,
) -> Result<WeavingReport> {
    Sweep::prepare(families, subspace, Some(k))?.run(opts)
}
