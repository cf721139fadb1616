use std::collections::HashMap;

/// Maps labels to dense vectors of a fixed dimension.
pub trait EmbeddingProvider: Send + Sync {
    fn dim(&self) -> usize;
    fn embed(&self, label: &str) -> Result<Vec<f64>, EmbedError>;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("no embedding for label {0:?}")]
    MissingLabel(String),
    #[error("embedding file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub const DEFAULT_DIM: usize = 512;

const FNV_OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01B3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// Hashed character-trigram embedding. The lowercased label is padded with
/// one space on each side, every 3-character window is hashed as UTF-8 with
/// FNV-1a 64 into `dim` buckets, and the counts are L2 normalized.
#[derive(Debug, Clone, Copy)]
pub struct HashNgramProvider {
    pub dim: usize,
}

impl Default for HashNgramProvider {
    fn default() -> Self {
        HashNgramProvider { dim: DEFAULT_DIM }
    }
}

impl EmbeddingProvider for HashNgramProvider {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, label: &str) -> Result<Vec<f64>, EmbedError> {
        let chars: Vec<char> = format!(" {} ", label.to_lowercase()).chars().collect();
        let mut v = vec![0.0; self.dim];
        let mut buf = [0u8; 12];
        for w in chars.windows(3) {
            let mut len = 0;
            for c in w {
                len += c.encode_utf8(&mut buf[len..]).len();
            }
            v[(fnv1a64(&buf[..len]) % self.dim as u64) as usize] += 1.0;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(EmbedError::ZeroVector);
        }
        v.iter_mut().for_each(|x| *x /= norm);
        Ok(v)
    }
}

/// Precomputed vectors read from a text file: a `dim N` header, then one
/// `label<TAB>v1 v2 ... vN` line per label.
#[derive(Debug, Clone)]
pub struct FileProvider {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl FileProvider {
    pub fn parse(text: &str) -> Result<Self, EmbedError> {
        let bad = |line: usize, message: String| EmbedError::Format { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing `dim N` header".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim")
            .and_then(|d| d.trim().parse().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| bad(1, format!("expected `dim N`, got {header:?}")))?;
        let mut vectors = HashMap::new();
        for (i, line) in lines {
            let (label, rest) = line
                .split_once('\t')
                .ok_or_else(|| bad(i + 1, "expected label<TAB>vector".into()))?;
            let v: Vec<f64> = rest
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| bad(i + 1, format!("{e}")))?;
            if v.len() != dim {
                return Err(bad(i + 1, format!("{} components, header says {dim}", v.len())));
            }
            vectors.insert(label.to_string(), v);
        }
        Ok(FileProvider { dim, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl EmbeddingProvider for FileProvider {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, label: &str) -> Result<Vec<f64>, EmbedError> {
        self.vectors
            .get(label)
            .cloned()
            .ok_or_else(|| EmbedError::MissingLabel(label.to_string()))
    }
}

pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, EmbedError> {
    if u.len() != v.len() {
        return Err(EmbedError::DimensionMismatch(u.len(), v.len()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(EmbedError::ZeroVector);
    }
    Ok(dot / (nu * nv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn trigram_vector_is_unit() {
        let v = HashNgramProvider::default().embed("Neural Networks").unwrap();
        let norm: f64 = v.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(v, HashNgramProvider::default().embed("neural networks").unwrap());
        assert_eq!(HashNgramProvider::default().embed(""), Err(EmbedError::ZeroVector));
    }

    #[test]
    fn cosine_errors() {
        assert_eq!(cosine(&[1.0], &[1.0, 0.0]), Err(EmbedError::DimensionMismatch(1, 2)));
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 0.0]), Err(EmbedError::ZeroVector));
        assert!((cosine(&[1.0, 0.0], &[1.0, 1.0]).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn file_provider() {
        let p = FileProvider::parse("dim 2\nalpha\t1 0\nbeta gamma\t0.5 0.5\n").unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.embed("beta gamma").unwrap(), vec![0.5, 0.5]);
        assert_eq!(p.embed("delta"), Err(EmbedError::MissingLabel("delta".into())));
        assert!(matches!(FileProvider::parse("dim 2\nx\t1\n"), Err(EmbedError::Format { line: 2, .. })));
        assert!(FileProvider::parse("2\n").is_err());
    }
}
