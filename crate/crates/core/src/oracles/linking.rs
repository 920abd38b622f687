use crate::diagram::LinkDiagram;

/// lk(i, j) off the diagonal (half the signed count of i–j crossings) and the
/// self-writhe of component i on it.
pub fn linking_matrix(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let k = d.component_count();
    let mut twice = vec![vec![0i64; k]; k];
    for c in d.crossings() {
        let (a, b) = (c.over.component, c.under.component);
        if a == b {
            twice[a][a] += 2 * c.sign as i64;
        } else {
            twice[a][b] += c.sign as i64;
            twice[b][a] += c.sign as i64;
        }
    }
    for (i, row) in twice.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            debug_assert!(i == j || *v % 2 == 0, "odd crossing count between components");
            *v /= 2;
        }
    }
    twice
}

pub fn writhe(d: &LinkDiagram) -> i64 {
    d.writhe()
}

pub fn component_count(d: &LinkDiagram) -> usize {
    d.component_count()
}

/// Canonical form of a linking matrix up to simultaneous reindexing: the
/// lexicographically smallest matrix over all component orders (brute force
/// for up to 8 components, sorted rows beyond).
pub fn canonical_linking(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = m.len();
    if k > 8 {
        let mut rows: Vec<Vec<i64>> = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut off: Vec<i64> = r.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                off.sort_unstable();
                off.insert(0, r[i]);
                off
            })
            .collect();
        rows.sort();
        return rows;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<Vec<i64>>> = None;
    permute(&mut perm, 0, &mut |p| {
        let cand: Vec<Vec<i64>> = p.iter().map(|&i| p.iter().map(|&j| m[i][j]).collect()).collect();
        if best.as_ref().is_none_or(|b| &cand < b) {
            best = Some(cand);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize])) {
    if at == p.len() {
        f(p);
        return;
    }
    for i in at..p.len() {
        p.swap(at, i);
        permute(p, at + 1, f);
        p.swap(at, i);
    }
}
