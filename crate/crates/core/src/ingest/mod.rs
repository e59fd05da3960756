//! Corpus ingestion: DBLP-style XML to expert graph and community files.
//!
//! The pipeline is [`parse_corpus`] → [`build_graph`] → the TSV writers in
//! [`crate::graph::io`], plus a [`network_stats`] summary.

mod build;
mod text;
mod venues;
mod xml;

pub use build::{
    author_stats, build_graph, network_stats, stats_csv, write_stats_csv, AuthorStats, IngestConfig,
    IngestOutput, NetworkStats, STATS_CSV_HEADER,
};
pub use text::{extract_skills, skills_from_counts, stem, tokenize, TextPipeline};
pub use venues::VenueConfig;
pub use xml::{parse_corpus, parse_corpus_file, PublicationRecord};
