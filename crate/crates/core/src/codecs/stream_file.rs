//! On-disk forms of encoded streams and run lists (UTF-8 JSON).
//!
//! Chunk stream:
//!
//! ```json
//! {"dictionary": [{"code": "w1", "symbols": ["a", "b"], "count": 3}],
//!  "stream": [{"code": "w1"}, {"lit": "x"}]}
//! ```
//!
//! Run list: `{"runs": [{"symbols": ["a", "b"], "count": 3}]}` where `count`
//! may also be the string `"*"` for an unbounded run.

use serde::{Deserialize, Serialize};

use super::{ChunkDictionary, CodecError, EncodedStream, Run, RunCount, StreamToken};
use crate::pattern::Symbol;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DictEntry {
    code: String,
    symbols: Vec<Symbol>,
    count: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum TokenRepr {
    Code { code: String },
    Lit { lit: Symbol },
}

/// Serialized chunk stream.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamFile {
    dictionary: Vec<DictEntry>,
    stream: Vec<TokenRepr>,
}

impl StreamFile {
    pub fn from_stream(s: &EncodedStream) -> Self {
        let dictionary = s
            .dictionary
            .entries()
            .iter()
            .map(|c| DictEntry { code: c.code.clone(), symbols: c.symbols().to_vec(), count: c.count })
            .collect();
        let stream = s
            .tokens
            .iter()
            .map(|t| match t {
                StreamToken::CodeRef(code) => TokenRepr::Code { code: code.clone() },
                StreamToken::Literal(lit) => TokenRepr::Lit { lit: lit.clone() },
            })
            .collect();
        StreamFile { dictionary, stream }
    }

    pub fn into_stream(self) -> Result<EncodedStream, CodecError> {
        let dictionary =
            ChunkDictionary::from_entries(self.dictionary.into_iter().map(|e| (e.code, e.symbols, e.count)))?;
        let tokens = self
            .stream
            .into_iter()
            .map(|t| match t {
                TokenRepr::Code { code } => StreamToken::CodeRef(code),
                TokenRepr::Lit { lit } => StreamToken::Literal(lit),
            })
            .collect();
        Ok(EncodedStream { dictionary, tokens })
    }

    pub fn to_json(s: &EncodedStream) -> String {
        serde_json::to_string_pretty(&StreamFile::from_stream(s)).expect("stream serializes")
    }

    pub fn parse(text: &str) -> Result<EncodedStream, CodecError> {
        let file: StreamFile = serde_json::from_str(text).map_err(|e| CodecError::Format(e.to_string()))?;
        file.into_stream()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CountRepr {
    Times(u64),
    Star(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunRepr {
    symbols: Vec<Symbol>,
    count: CountRepr,
}

/// Serialized run list.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RleFile {
    runs: Vec<RunRepr>,
}

impl RleFile {
    pub fn to_json(runs: &[Run]) -> String {
        let file = RleFile {
            runs: runs
                .iter()
                .map(|r| RunRepr {
                    symbols: r.block.clone(),
                    count: match r.count {
                        RunCount::Times(n) => CountRepr::Times(n),
                        RunCount::Unbounded => CountRepr::Star("*".into()),
                    },
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("runs serialize")
    }

    pub fn parse(text: &str) -> Result<Vec<Run>, CodecError> {
        let file: RleFile = serde_json::from_str(text).map_err(|e| CodecError::Format(e.to_string()))?;
        file.runs
            .into_iter()
            .map(|r| {
                if r.symbols.is_empty() {
                    return Err(CodecError::Format("run with no symbols".into()));
                }
                let count = match r.count {
                    CountRepr::Times(0) => return Err(CodecError::Format("run count 0".into())),
                    CountRepr::Times(n) => RunCount::Times(n),
                    CountRepr::Star(s) if s == "*" => RunCount::Unbounded,
                    CountRepr::Star(s) => return Err(CodecError::Format(format!("bad run count {s:?}"))),
                };
                Ok(Run { block: r.symbols, count })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::{chunk_decode, chunk_encode, discover_chunks, rle_decode, rle_encode};
    use crate::pattern::symbols;

    #[test]
    fn stream_file_layout() {
        let corpus = symbols("a b x a b y a b");
        let dict = discover_chunks(&corpus, 2, 2).unwrap();
        let stream = chunk_encode(&corpus, &dict);
        let json = StreamFile::to_json(&stream);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["dictionary"][0]["code"], "w1");
        assert_eq!(value["dictionary"][0]["symbols"], serde_json::json!(["a", "b"]));
        assert_eq!(value["dictionary"][0]["count"], 3);
        assert_eq!(value["stream"][0], serde_json::json!({"code": "w1"}));
        assert_eq!(value["stream"][1], serde_json::json!({"lit": "x"}));
        let back = StreamFile::parse(&json).unwrap();
        assert_eq!(back, stream);
        assert_eq!(chunk_decode(&back).unwrap(), corpus);
    }

    #[test]
    fn malformed_streams() {
        assert!(matches!(StreamFile::parse("{}"), Err(CodecError::Format(_))));
        assert!(matches!(StreamFile::parse("not json"), Err(CodecError::Format(_))));
        assert!(matches!(
            StreamFile::parse(r#"{"dictionary": [], "stream": [{"lit": "a b"}]}"#),
            Err(CodecError::Format(_))
        ));
        let unknown = StreamFile::parse(r#"{"dictionary": [], "stream": [{"code": "w3"}]}"#).unwrap();
        assert_eq!(chunk_decode(&unknown), Err(CodecError::UnknownCode("w3".into())));
    }

    #[test]
    fn rle_file_round_trip() {
        let seq = symbols("a b a b a b c");
        let runs = rle_encode(&seq);
        let back = RleFile::parse(&RleFile::to_json(&runs)).unwrap();
        assert_eq!(rle_decode(&back).unwrap(), seq);

        let star = RleFile::parse(r#"{"runs": [{"symbols": ["a"], "count": "*"}]}"#).unwrap();
        assert_eq!(star[0].count, RunCount::Unbounded);
        assert!(RleFile::parse(r#"{"runs": [{"symbols": ["a"], "count": "x"}]}"#).is_err());
        assert!(RleFile::parse(r#"{"runs": [{"symbols": ["a"], "count": 0}]}"#).is_err());
    }
}
