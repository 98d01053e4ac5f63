//! Seeded variant generation.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::fresh::random_name;
use super::rename::taken_names;
use super::{apply, find_sites, Mutation, MutationClass, MutationContext, Site};
use crate::program::{Program, SyntaxError};

/// Variants kept per program and class.
pub const VARIANTS_PER_CLASS: usize = 2;

/// Whether a variant has been checked against its parent's tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Pending,
    Equivalent,
    Rejected,
}

/// One mutated copy of a program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variant {
    pub id: String,
    pub parent_id: String,
    pub class: MutationClass,
    /// Per-class RNG seed that produced this variant.
    pub seed: u64,
    pub site: Site,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub source: String,
    pub verified: Verification,
}

impl Variant {
    pub fn mutation(&self) -> Mutation {
        Mutation {
            class: self.class,
            site: self.site.clone(),
            k: self.k,
        }
    }
}

/// Derives the RNG seed for one program and class from the run seed.
pub fn class_seed(seed: u64, program_id: &str, class: MutationClass) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(program_id.as_bytes());
    h.update([0]);
    h.update(class.as_str().as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// Generates up to [`VARIANTS_PER_CLASS`] distinct variants per class.
/// Output is a pure function of the program and `seed`.
pub fn generate_variants(program: &Program, seed: u64) -> Result<Vec<Variant>, SyntaxError> {
    let tree = program.parse()?;
    let ctx = MutationContext::for_program(program);
    let parent_text = tree.emit();
    let mut out = Vec::new();
    for class in MutationClass::ALL {
        let class_seed = class_seed(seed, &program.id, class);
        let mut rng = ChaCha8Rng::seed_from_u64(class_seed);
        let mut sites = find_sites(&tree, class, &ctx);
        sites.shuffle(&mut rng);
        let mut taken = taken_names(&tree);
        let mut seen: HashSet<String> = HashSet::new();
        for mut site in sites {
            if seen.len() == VARIANTS_PER_CLASS {
                break;
            }
            if let Some((_, new)) = &mut site.rename {
                *new = random_name(&mut rng, &taken);
                taken.insert(new.clone());
            }
            let k = (class == MutationClass::UnrollLoop).then(|| rng.gen_range(1..=2));
            let mutation = Mutation { class, site, k };
            let Ok(mutated) = apply(&tree, &mutation, &ctx) else {
                continue;
            };
            let source = mutated.emit();
            if source == parent_text || !seen.insert(source.clone()) {
                continue;
            }
            out.push(Variant {
                id: format!("{}::{}::{}", program.id, class.as_str(), seen.len() - 1),
                parent_id: program.id.clone(),
                class,
                seed: class_seed,
                site: mutation.site,
                k,
                source,
                verified: Verification::Pending,
            });
        }
    }
    Ok(out)
}
