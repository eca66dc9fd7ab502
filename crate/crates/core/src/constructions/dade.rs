use serde::Serialize;

use super::series::{composition_series_prime_factors, SeriesWithPrimeFactors};
use super::{cyclic, wreath_by_cyclic, wreath_order};
use crate::error::{Error, Result};
use crate::group::{GroupHomomorphism, GroupRef, Permutation};

/// The order of `(((C₁ ≀ C_{p₁}) ≀ C_{p₂}) ≀ ⋯ ) ≀ C_{p_n}`, saturating.
pub fn tower_order(primes: &[usize]) -> usize {
    primes.iter().fold(1usize, |acc, &p| wreath_order(acc, p))
}

/// `(((C1 ≀ C3) ≀ C2)` style rendering, bracketed bottom-up.
fn tower_recipe(primes: &[usize]) -> String {
    primes.iter().fold("C1".to_string(), |acc, p| format!("({acc} ≀ C{p})"))
}

/// The same tower as a group spec: `wreath:[wreath:cyclic:1~cyclic:3]~cyclic:2`.
fn tower_spec(primes: &[usize]) -> String {
    primes.iter().fold("cyclic:1".to_string(), |acc, p| {
        if acc.starts_with("wreath:") {
            format!("wreath:[{acc}]~cyclic:{p}")
        } else {
            format!("wreath:{acc}~cyclic:{p}")
        }
    })
}

pub struct DadeEmbedding {
    pub series: SeriesWithPrimeFactors,
    pub tower: GroupRef,
    pub map: GroupHomomorphism,
    pub recipe: String,
    pub tower_spec: String,
}

/// Embed a solvable group into the wreath tower over the primes of `series`
/// (computed from the group when `None`).
///
/// Level `i` embeds `E = G_i` into `W_{i-1} ≀ C_p` where `N = G_{i-1}`: the
/// cosets of `N` in `E` are ordered `N, Nx, Nx², …` with `x` the least
/// element of `E \ N`, each represented by its least element `t_j`. Writing
/// `t_j g = n_j(g) t_{π(j)}`, the image of `g` sends point `(j, s)` of block
/// `j` to `(π(j), s^{φ_{i-1}(n_j(g))})`.
pub fn dade_embedding(group: &GroupRef, series: Option<SeriesWithPrimeFactors>, bound: usize) -> Result<DadeEmbedding> {
    let series = match series {
        Some(s) => s,
        None => composition_series_prime_factors(group)?,
    };
    series.check().map_err(Error::InvalidArgument)?;
    let order = tower_order(&series.factor_primes);
    if order > bound {
        return Err(Error::GroupTooLarge { order, bound, what: "wreath tower" });
    }

    let g = group;
    let mut tower = cyclic(1, bound)?;
    // images[x] is φ_i(x) for x in the current term, as a permutation of the
    // current tower's points
    let mut images: Vec<Option<Permutation>> = vec![None; g.order()];
    images[0] = Some(Permutation::identity(1));
    let mut degree = 1usize;
    for (i, &p) in series.factor_primes.iter().enumerate() {
        let (n, e) = (&series.terms[i], &series.terms[i + 1]);
        let x = *e.members().iter().find(|&&y| !n.contains(y)).expect("proper extension");
        // coset_of[y] = j with y ∈ N x^j
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::with_capacity(p);
        let mut xj = 0usize;
        for j in 0..p {
            let mut least = usize::MAX;
            for &m in n.members() {
                let y = g.mul(m, xj);
                coset_of[y] = j;
                least = least.min(y);
            }
            reps.push(least);
            xj = g.mul(xj, x);
        }
        let next_degree = degree * p;
        let mut next: Vec<Option<Permutation>> = vec![None; g.order()];
        for &y in e.members() {
            let mut img = vec![0u32; next_degree];
            for (j, &t) in reps.iter().enumerate() {
                let ty = g.mul(t, y);
                let k = coset_of[ty];
                let nj = g.mul(ty, g.inv(reps[k]));
                let inner = images[nj].as_ref().expect("n_j lies in the previous term");
                for s in 0..degree {
                    img[j * degree + s] = (k * degree + inner.apply(s)) as u32;
                }
            }
            next[y] = Some(Permutation::from_images(img)?);
        }
        tower = wreath_by_cyclic(&tower, p, bound)?.group;
        images = next;
        degree = next_degree;
    }

    let image: Vec<usize> = images
        .iter()
        .map(|p| {
            let p = p.as_ref().expect("the last term is G");
            tower
                .index_of_permutation(p)
                .ok_or_else(|| Error::InvariantViolation(format!("image {p} is not in the wreath tower")))
        })
        .collect::<Result<_>>()?;
    let map = GroupHomomorphism::new(g.clone(), tower.clone(), image);
    if !map.is_homomorphism() {
        return Err(Error::InvariantViolation("embedding is not a homomorphism".into()));
    }
    if !map.is_injective() {
        return Err(Error::InvariantViolation("embedding has a nontrivial kernel".into()));
    }
    let recipe = tower_recipe(&series.factor_primes);
    let tower_spec = tower_spec(&series.factor_primes);
    Ok(DadeEmbedding { series, tower, map, recipe, tower_spec })
}

#[derive(Serialize)]
pub struct ElementImage {
    pub element: String,
    pub image: String,
}

#[derive(Serialize)]
pub struct EmbeddingReport {
    pub group: String,
    pub order: usize,
    pub series: SeriesWithPrimeFactors,
    pub tower: String,
    pub tower_spec: String,
    pub tower_order: usize,
    pub tower_degree: usize,
    pub homomorphism: bool,
    pub injective: bool,
    pub image_order: usize,
    pub map: Vec<ElementImage>,
}

impl DadeEmbedding {
    /// Re-checks the map exhaustively while building the report.
    pub fn report(&self, name: &str) -> EmbeddingReport {
        let g = self.map.source();
        EmbeddingReport {
            group: name.to_string(),
            order: g.order(),
            series: self.series.clone(),
            tower: self.recipe.clone(),
            tower_spec: self.tower_spec.clone(),
            tower_order: self.tower.order(),
            tower_degree: self.tower.action_degree(),
            homomorphism: self.map.is_homomorphism(),
            injective: self.map.is_injective(),
            image_order: self.map.image_subgroup().order(),
            map: (0..g.order())
                .map(|x| ElementImage { element: g.label(x).to_string(), image: self.tower.label(self.map.apply(x)).to_string() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, cyclic, dihedral, quaternion, symmetric};
    use crate::group::DEFAULT_MAX_ORDER;

    fn embed(g: &GroupRef) -> DadeEmbedding {
        let d = dade_embedding(g, None, DEFAULT_MAX_ORDER).unwrap();
        assert!(d.map.is_homomorphism() && d.map.is_injective());
        assert_eq!(d.map.image_subgroup().order(), g.order());
        assert_eq!(d.tower.order(), tower_order(&d.series.factor_primes));
        d
    }

    #[test]
    fn sym3_embeds_in_c3_wr_c2() {
        let d = embed(&symmetric(3, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(d.tower.order(), 18);
        assert_eq!(d.recipe, "((C1 ≀ C3) ≀ C2)");
        assert_eq!(d.tower_spec, "wreath:[wreath:cyclic:1~cyclic:3]~cyclic:2");
    }

    #[test]
    fn tower_orders() {
        let b = DEFAULT_MAX_ORDER;
        assert_eq!(embed(&cyclic(6, b).unwrap()).tower.order(), 24);
        assert_eq!(embed(&dihedral(8, b).unwrap()).tower.order(), 128);
        assert_eq!(embed(&quaternion(8, b).unwrap()).tower.order(), 128);
        assert_eq!(embed(&alternating(4, b).unwrap()).tower.order(), 1536);
        assert_eq!(tower_order(&[2, 2, 3]), 1536);
    }

    #[test]
    fn prime_cyclic_is_its_own_tower() {
        let c5 = cyclic(5, DEFAULT_MAX_ORDER).unwrap();
        let d = embed(&c5);
        assert_eq!(d.tower.order(), 5);
        assert_eq!(d.tower.labels(), c5.labels());
        assert!((0..5).all(|x| d.map.apply(x) == x));
        let t = embed(&cyclic(1, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(t.tower.order(), 1);
    }

    #[test]
    fn oversized_tower_reports_its_order() {
        let s4 = symmetric(4, DEFAULT_MAX_ORDER).unwrap();
        match dade_embedding(&s4, None, DEFAULT_MAX_ORDER) {
            Err(Error::GroupTooLarge { order, .. }) => assert_eq!(order, 1536 * 1536 * 2),
            other => panic!("expected GroupTooLarge, got {:?}", other.map(|d| d.tower.order())),
        }
        let a5 = alternating(5, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(dade_embedding(&a5, None, DEFAULT_MAX_ORDER).err(), Some(Error::NotSolvable));
    }
}
