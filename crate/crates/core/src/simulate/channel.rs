//! Additive memoryless channels.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};
use crate::infotheory::ChannelModel;

/// Sampler of i.i.d. error symbols with law W.
#[derive(Clone, Debug)]
pub struct ErrorSampler {
    dist: WeightedIndex<f64>,
}

impl ErrorSampler {
    pub fn new(w: &ChannelModel) -> Result<Self> {
        w.validate()?;
        let dist = WeightedIndex::new(&w.probs).map_err(|e| Error::InvalidChannel(e.to_string()))?;
        Ok(ErrorSampler { dist })
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Elem> {
        (0..n).map(|_| Elem(self.dist.sample(rng) as u32)).collect()
    }
}

/// y = x + e with e drawn symbol-wise from W.
pub fn transmit<R: Rng + ?Sized>(field: &Field, x: &[Elem], w: &ChannelModel, rng: &mut R) -> Result<Vec<Elem>> {
    if w.q != field.order() as usize {
        return Err(Error::InvalidChannel(format!(
            "channel alphabet {} differs from field order {}",
            w.q,
            field.order()
        )));
    }
    let e = ErrorSampler::new(w)?.sample(x.len(), rng);
    Ok(field.add_vec(x, &e))
}
