use std::collections::{BTreeMap, BTreeSet, HashSet};

const STOPWORDS_EN: &str = include_str!("../../data/stopwords_en.txt");

/// Splits on non-alphanumeric characters and lowercases, dropping tokens
/// shorter than two characters and purely numeric ones.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2 && !t.chars().all(|c| c.is_numeric()))
        .map(str::to_lowercase)
}

pub fn stem(word: &str) -> String {
    porter_stemmer::stem(word)
}

/// Title words to skill stems: tokenize, drop stop words, then stem.
#[derive(Debug, Clone)]
pub struct TextPipeline {
    stopwords: HashSet<String>,
}

impl Default for TextPipeline {
    fn default() -> Self {
        TextPipeline::with_stopwords(STOPWORDS_EN.lines())
    }
}

impl TextPipeline {
    pub fn with_stopwords<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        TextPipeline {
            stopwords: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(word)
    }

    pub fn stems<'a>(&'a self, title: &'a str) -> impl Iterator<Item = String> + 'a {
        tokenize(title)
            .filter(|t| !self.is_stopword(t))
            .map(|t| stem(&t))
    }

    /// Adds the stems of one title to `counts`.
    pub fn count_into(&self, title: &str, counts: &mut BTreeMap<String, u32>) {
        for s in self.stems(title) {
            *counts.entry(s).or_default() += 1;
        }
    }
}

/// Stems occurring at least `min_count` times across all of `titles`.
pub fn extract_skills<'a, I>(titles: I, pipeline: &TextPipeline, min_count: u32) -> BTreeSet<String>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut counts = BTreeMap::new();
    for t in titles {
        pipeline.count_into(t, &mut counts);
    }
    skills_from_counts(&counts, min_count)
}

pub fn skills_from_counts(counts: &BTreeMap<String, u32>, min_count: u32) -> BTreeSet<String> {
    counts
        .iter()
        .filter(|&(_, &c)| c >= min_count)
        .map(|(s, _)| s.clone())
        .collect()
}
