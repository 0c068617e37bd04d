//! The claims checked by experiments, with their mathematical statements.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "zxzq-length-formula",
        statement: "In Z x Z/q with S = {±(p,1), ±(q+1,0)} and p > q+1 prime, the word length of (0,1) is exactly p+q+1.",
    },
    Claim {
        id: "zxzq-unbounded",
        statement: "The lengths l_S((0,1)) in Z x Z/q strictly increase with p, so (0,1) has no length bound uniform over generating sets.",
    },
    Claim {
        id: "zd-unbounded",
        statement: "In Z^d, for coprime p,q and bp - aq = 1, S(p,q) = {±(p,a,0,...), ±(q,b,0,...), ±e_3, ..., ±e_d} generates, and the length of a fixed nonzero X grows along a ladder of pairs.",
    },
    Claim {
        id: "heisenberg-unbounded",
        statement: "In the Heisenberg group <a,b,c | [a,b]=c, c central>, S = {a^±p, a^±q, b^±1} generates for coprime p,q and l_S(c^n) tends to infinity with p.",
    },
    Claim {
        id: "heisenberg-center",
        statement: "For every generating pair {x^±1, y^±1} of the Heisenberg group, [x,y] = c^±1; hence c has length at most 4 under every generating set with at most 4 elements.",
    },
    Claim {
        id: "dinfty-unbounded",
        statement: "In D_inf = <t,s | s^2, sts = t^-1>, S = {s, t^α s, t^β s} generates when gcd(α,β) = 1, and l_S(t) grows along a ladder of pairs.",
    },
    Claim {
        id: "zxd8-bounded",
        statement: "In Z x D8, every generating set S satisfies l_S((0,z)) <= 4 for the central element z = r^2: two letters with non-commuting D8 parts have commutator (0,z).",
    },
    Claim {
        id: "prescribed-length",
        statement: "For g != e in F_k or Z^d and l >= 0 there is a generating set E with l_E(g) = l+1, namely E = {g^±2, g^±p} ∪ {x_i^±u, x_i^±v} with p = 2l+1, primes p < u < v and v > 3Nu.",
    },
    Claim {
        id: "quotient-orbit",
        statement: "On D_2p = D_inf/<t^p>, (x,y) -> (x^k,y) is an automorphism for every unit k mod p, and the orbit of the rotation under these maps has at least p/2 elements.",
    },
    Claim {
        id: "aut-orbit-bound",
        statement: "If l_S(g) <= M for every generating set S of G, then the orbit Aut(G).g lies in the ball B_S(M) and |Aut(G).g| <= n^M where n = |S|.",
    },
    Claim {
        id: "uniform-length",
        statement: "In a finite group G every element has length at most |G| under every generating set; the exact supremum over all symmetric generating sets is computed by enumeration.",
    },
    Claim {
        id: "fc-witness",
        statement: "A non-central Heisenberg element has infinitely many conjugates (counts over balls strictly increase with the radius), while a central element has exactly one.",
    },
];

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}
