use std::collections::{BTreeMap, BTreeSet};

use super::CodecError;
use crate::pattern::{Pattern, PatternKind, Symbol};

/// Slot name to filler code.
pub type Corrections = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    /// Allowed fillers; each pattern's id is its code.
    pub fillers: Vec<Pattern>,
}

impl Slot {
    pub fn filler(&self, code: &str) -> Option<&Pattern> {
        self.fillers.iter().find(|f| f.id() == code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaElement {
    Fixed(Symbol),
    Slot(Slot),
}

/// A template whose slots are filled, or "corrected", per instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    id: String,
    elements: Vec<SchemaElement>,
}

impl Schema {
    pub fn new(id: impl Into<String>, elements: Vec<SchemaElement>) -> Result<Self, CodecError> {
        let id = id.into();
        if elements.is_empty() {
            return Err(CodecError::InvalidSchema(format!("schema {id:?} has no elements")));
        }
        let mut names = BTreeSet::new();
        for e in &elements {
            if let SchemaElement::Slot(slot) = e {
                if !names.insert(slot.name.as_str()) {
                    return Err(CodecError::InvalidSchema(format!("duplicate slot {:?}", slot.name)));
                }
                if slot.fillers.is_empty() {
                    return Err(CodecError::InvalidSchema(format!("slot {:?} has no fillers", slot.name)));
                }
                let mut codes = BTreeSet::new();
                for f in &slot.fillers {
                    if !codes.insert(f.id()) {
                        return Err(CodecError::InvalidSchema(format!(
                            "duplicate filler code {:?} in slot {:?}",
                            f.id(),
                            slot.name
                        )));
                    }
                }
            }
        }
        Ok(Schema { id, elements })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn elements(&self) -> &[SchemaElement] {
        &self.elements
    }

    pub fn slots(&self) -> impl Iterator<Item = &Slot> {
        self.elements.iter().filter_map(|e| match e {
            SchemaElement::Slot(s) => Some(s),
            SchemaElement::Fixed(_) => None,
        })
    }

    /// Substitutes the chosen filler for every slot.
    pub fn instantiate(&self, corrections: &Corrections) -> Result<Pattern, CodecError> {
        for name in corrections.keys() {
            if !self.slots().any(|s| &s.name == name) {
                return Err(CodecError::BadCorrection(format!("schema has no slot {name:?}")));
            }
        }
        let mut out = Vec::new();
        for e in &self.elements {
            match e {
                SchemaElement::Fixed(s) => out.push(s.clone()),
                SchemaElement::Slot(slot) => {
                    let code = corrections
                        .get(&slot.name)
                        .ok_or_else(|| CodecError::BadCorrection(format!("no filler for slot {:?}", slot.name)))?;
                    let filler = slot.filler(code).ok_or_else(|| {
                        CodecError::BadCorrection(format!("unknown filler {code:?} for slot {:?}", slot.name))
                    })?;
                    out.extend_from_slice(filler.symbols());
                }
            }
        }
        Ok(Pattern::new(self.id.clone(), out, 1, PatternKind::New)?)
    }

    /// Recovers the corrections that produce `instance`.
    ///
    /// Fails with [`CodecError::AmbiguousInstance`] when two different
    /// corrections produce the same symbols.
    pub fn encode(&self, instance: &[Symbol]) -> Result<Corrections, CodecError> {
        let mut found = Vec::new();
        let mut current = Vec::new();
        self.match_from(0, instance, &mut current, &mut found);
        match found.len() {
            0 => Err(CodecError::NoSchemaMatch(self.id.clone())),
            1 => Ok(found.pop().unwrap().into_iter().collect()),
            _ => Err(CodecError::AmbiguousInstance(self.id.clone())),
        }
    }

    // Depth-first match; stops once a second parse has been seen.
    fn match_from(
        &self,
        elem: usize,
        rest: &[Symbol],
        current: &mut Vec<(String, String)>,
        found: &mut Vec<Vec<(String, String)>>,
    ) {
        if found.len() > 1 {
            return;
        }
        let Some(e) = self.elements.get(elem) else {
            if rest.is_empty() {
                found.push(current.clone());
            }
            return;
        };
        match e {
            SchemaElement::Fixed(s) => {
                if rest.first() == Some(s) {
                    self.match_from(elem + 1, &rest[1..], current, found);
                }
            }
            SchemaElement::Slot(slot) => {
                for filler in &slot.fillers {
                    if rest.starts_with(filler.symbols()) {
                        current.push((slot.name.clone(), filler.id().to_owned()));
                        self.match_from(elem + 1, &rest[filler.len()..], current, found);
                        current.pop();
                    }
                }
            }
        }
    }

    /// Compact form such as `MN: ST(st2) MC(mc5) PG(pg3)`.
    pub fn render_corrections(&self, corrections: &Corrections) -> Result<String, CodecError> {
        let mut parts = Vec::new();
        for e in &self.elements {
            match e {
                SchemaElement::Fixed(s) => parts.push(s.to_string()),
                SchemaElement::Slot(slot) => {
                    let code = corrections
                        .get(&slot.name)
                        .ok_or_else(|| CodecError::BadCorrection(format!("no filler for slot {:?}", slot.name)))?;
                    parts.push(format!("{}({code})", slot.name));
                }
            }
        }
        Ok(parts.join(" "))
    }
}
