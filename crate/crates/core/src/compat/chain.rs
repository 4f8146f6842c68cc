// Licensed under the Apache-2.0 license

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::der_x509::{DistinguishedName, KeyFingerprint, ParsedCertificate};

/// Indices into the certificate slice given to [`build_chains`], leaf first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertChain {
    pub members: Vec<usize>,
    /// The last member is self-issued.
    pub complete: bool,
}

impl CertChain {
    pub fn certs<'a>(&'a self, all: &'a [ParsedCertificate]) -> impl Iterator<Item = &'a ParsedCertificate> + 'a {
        self.members.iter().map(move |&i| &all[i])
    }

    pub fn leaf(&self) -> usize {
        self.members[0]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainSet {
    pub chains: Vec<CertChain>,
    pub diagnostics: Vec<String>,
}

/// Upper bound on search steps when choosing among same-subject issuers.
const SEARCH_BUDGET: usize = 10_000;

struct Builder<'a> {
    certs: &'a [ParsedCertificate],
    by_subject: HashMap<&'a DistinguishedName, Vec<usize>>,
    used: Vec<bool>,
    budget: usize,
}

impl<'a> Builder<'a> {
    fn issuers_of(&self, i: usize) -> Vec<usize> {
        let cert = &self.certs[i];
        self.by_subject
            .get(&cert.issuer)
            .map(|v| v.iter().copied().filter(|&j| j != i && !self.used[j]).collect())
            .unwrap_or_default()
    }

    /// Longest chain length reachable above `i` using unused certificates.
    fn depth(&mut self, i: usize) -> usize {
        if self.certs[i].is_self_issued() || self.budget == 0 {
            return 0;
        }
        self.budget -= 1;
        let mut best = 0;
        for j in self.issuers_of(i) {
            self.used[j] = true;
            best = best.max(1 + self.depth(j));
            self.used[j] = false;
        }
        best
    }

    fn extend(&mut self, start: usize, diagnostics: &mut Vec<String>) -> CertChain {
        let mut members = vec![start];
        self.used[start] = true;
        let mut cur = start;
        loop {
            if self.certs[cur].is_self_issued() {
                break;
            }
            let options = self.issuers_of(cur);
            let next = match options.as_slice() {
                [] => break,
                [only] => *only,
                _ => {
                    self.budget = SEARCH_BUDGET;
                    let mut best = (0, options[0]);
                    for &j in &options {
                        self.used[j] = true;
                        let d = self.depth(j);
                        self.used[j] = false;
                        if d > best.0 {
                            best = (d, j);
                        }
                    }
                    diagnostics.push(format!(
                        "{} certificates share subject \"{}\"; chose the one at offset {} (longest chain)",
                        options.len(),
                        self.certs[cur].issuer,
                        self.certs[best.1].source_offset
                    ));
                    best.1
                }
            };
            self.used[next] = true;
            members.push(next);
            cur = next;
        }
        let complete = self.certs[cur].is_self_issued();
        CertChain { members, complete }
    }
}

/// True when `certs[i]`'s subject issued some other certificate in the set.
fn issues_another(certs: &[ParsedCertificate], i: usize, live: impl Fn(usize) -> bool) -> bool {
    certs
        .iter()
        .enumerate()
        .any(|(j, c)| j != i && live(j) && c.issuer == certs[i].subject)
}

/// Links certificates into chains by exact issuer -> subject name equality.
///
/// Leaves (certificates whose subject issued no other certificate in the set)
/// start chains in input order. Each certificate ends up in exactly one chain.
/// When several unused certificates carry the wanted issuer name, the one
/// giving the longest chain wins and a diagnostic is recorded.
pub fn build_chains(certs: &[ParsedCertificate]) -> ChainSet {
    let mut by_subject: HashMap<&DistinguishedName, Vec<usize>> = HashMap::new();
    for (i, c) in certs.iter().enumerate() {
        by_subject.entry(&c.subject).or_default().push(i);
    }
    let mut builder = Builder {
        certs,
        by_subject,
        used: vec![false; certs.len()],
        budget: SEARCH_BUDGET,
    };
    let mut out = ChainSet::default();

    let leaves: Vec<usize> = (0..certs.len())
        .filter(|&i| !issues_another(certs, i, |_| true))
        .collect();
    for leaf in leaves {
        if !builder.used[leaf] {
            let chain = builder.extend(leaf, &mut out.diagnostics);
            out.chains.push(chain);
        }
    }
    // Leftovers: CAs whose children were claimed by another chain, or cycles.
    while let Some(first_unused) = builder.used.iter().position(|u| !u) {
        let start = (0..certs.len())
            .find(|&i| !builder.used[i] && !issues_another(certs, i, |j| !builder.used[j]))
            .unwrap_or_else(|| {
                out.diagnostics
                    .push("issuer cycle among certificates; chain started arbitrarily".to_string());
                first_unused
            });
        let chain = builder.extend(start, &mut out.diagnostics);
        out.chains.push(chain);
    }
    out
}

/// Signing keys of a set of certificates (typically all certificates carved
/// from one image).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SigningProfile {
    pub chains: Vec<CertChain>,
    /// Indices of the leaf certificates that contribute `signing_keys`.
    pub signing_certs: Vec<usize>,
    pub signing_keys: BTreeSet<KeyFingerprint>,
    pub root_keys: BTreeSet<KeyFingerprint>,
    /// No certificate qualified as a leaf, so every key was used.
    pub fallback: bool,
    pub diagnostics: Vec<String>,
}

/// Leaf keys of the chains built from `certs`. A lone self-issued
/// certificate only counts as a signer when it is the whole set; otherwise it
/// is treated as a root. If no leaf exists at all (issuer cycles), every key
/// is returned and `fallback` is set.
pub fn signing_profile(certs: &[ParsedCertificate]) -> SigningProfile {
    let ChainSet { chains, diagnostics } = build_chains(certs);
    let mut profile = SigningProfile {
        diagnostics,
        ..Default::default()
    };
    let any_leaf = (0..certs.len()).any(|i| !issues_another(certs, i, |_| true));

    if !certs.is_empty() && !any_leaf {
        profile.fallback = true;
        profile.signing_certs = (0..certs.len()).collect();
        profile.signing_keys = certs.iter().map(|c| c.key_fingerprint).collect();
        profile
            .diagnostics
            .push("no leaf certificate identified; using every key".into());
    } else {
        let lone_root = |chain: &CertChain| chain.members.len() == 1 && chain.complete && chains.len() > 1;
        for chain in &chains {
            let last = *chain.members.last().unwrap();
            if chain.complete && (chain.members.len() > 1 || lone_root(chain)) {
                profile.root_keys.insert(certs[last].key_fingerprint);
            }
            if !lone_root(chain) {
                profile.signing_certs.push(chain.leaf());
                profile.signing_keys.insert(certs[chain.leaf()].key_fingerprint);
            }
        }
    }
    profile.chains = chains;
    profile
}
