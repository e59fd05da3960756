use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

const DEFAULT_VENUES: &str = include_str!("../../data/venues.toml");

/// Research areas, each a list of venue keys.
///
/// A record belongs to a venue when its DBLP key has the form
/// `<prefix>/<venue>/...` with `<prefix>` listed in `key_prefixes`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VenueConfig {
    #[serde(default = "default_prefixes")]
    pub key_prefixes: Vec<String>,
    pub areas: BTreeMap<String, Vec<String>>,
}

fn default_prefixes() -> Vec<String> {
    vec!["conf".to_owned()]
}

impl Default for VenueConfig {
    fn default() -> Self {
        VenueConfig::parse(DEFAULT_VENUES).expect("bundled venue table is valid")
    }
}

impl VenueConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: VenueConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("venue config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?;
        VenueConfig::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        let mut seen: HashMap<String, &str> = HashMap::new();
        for (area, venues) in &self.areas {
            if venues.is_empty() {
                return Err(Error::Config(format!("area {area} lists no venues")));
            }
            for v in venues {
                let key = v.to_ascii_lowercase();
                if key.is_empty() || key.contains('/') {
                    return Err(Error::Config(format!("bad venue key {v:?}")));
                }
                if let Some(other) = seen.insert(key, area) {
                    return Err(Error::Config(format!("venue {v} appears in {other} and {area}")));
                }
            }
        }
        let area_names: Vec<String> = self.areas.keys().map(|a| a.to_ascii_uppercase()).collect();
        if let Some(clash) = seen.keys().find(|k| area_names.contains(&k.to_ascii_uppercase())) {
            return Err(Error::Config(format!("venue {clash} clashes with an area name")));
        }
        Ok(())
    }

    /// The venue key of a DBLP record key, if it is configured.
    pub fn venue_of(&self, record_key: &str) -> Option<String> {
        let mut parts = record_key.split('/');
        let prefix = parts.next()?;
        let venue = parts.next()?;
        parts.next()?;
        if !self.key_prefixes.iter().any(|p| p == prefix) {
            return None;
        }
        let venue = venue.to_ascii_lowercase();
        self.area_of(&venue).map(|_| venue)
    }

    pub fn area_of(&self, venue: &str) -> Option<&str> {
        self.areas
            .iter()
            .find(|(_, vs)| vs.iter().any(|v| v.eq_ignore_ascii_case(venue)))
            .map(|(a, _)| a.as_str())
    }

    /// Community name used for a venue.
    pub fn community_name(venue: &str) -> String {
        venue.to_ascii_uppercase()
    }
}
