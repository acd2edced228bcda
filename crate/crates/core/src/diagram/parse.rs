use super::{Diagram, DiagramError};

fn syntax(offset: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Parses whitespace-separated `X[a,b,c,d]` and `O` terms.
///
/// Arc labels are positive integers. Spaces are allowed inside brackets.
pub fn pd_parse(text: &str) -> Result<Diagram, DiagramError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut crossings = Vec::new();
    let mut free_loops = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'O' => {
                free_loops += 1;
                pos += 1;
            }
            b'X' => {
                pos += 1;
                skip_ws(&mut pos);
                if bytes.get(pos) != Some(&b'[') {
                    return Err(syntax(pos, "expected '['"));
                }
                pos += 1;
                let mut labels = [0u32; 4];
                for (k, label) in labels.iter_mut().enumerate() {
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(syntax(pos, "expected an arc label"));
                    }
                    *label = text[start..pos]
                        .parse()
                        .map_err(|_| syntax(start, "arc label out of range"))?;
                    if *label == 0 {
                        return Err(syntax(start, "arc labels must be positive"));
                    }
                    skip_ws(&mut pos);
                    let want = if k == 3 { b']' } else { b',' };
                    if bytes.get(pos) != Some(&want) {
                        return Err(syntax(pos, format!("expected '{}'", want as char)));
                    }
                    pos += 1;
                }
                crossings.push(labels);
            }
            _ => return Err(syntax(pos, "expected 'X[' or 'O'")),
        }
        if pos < bytes.len() && !(bytes[pos] as char).is_whitespace() {
            return Err(syntax(pos, "terms must be separated by whitespace"));
        }
    }
    Diagram::from_pd(&crossings, free_loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let d = pd_parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.to_string(), "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
    }

    #[test]
    fn parses_free_circle() {
        let d = pd_parse("O").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(pd_parse("O O").unwrap().component_count(), 2);
        assert_eq!(pd_parse("X[ 1, 4 ,2,5]X[3,6,4,1]").unwrap_err().to_string().contains("whitespace"), true);
    }

    #[test]
    fn dangling_arc() {
        assert_eq!(
            pd_parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,4]").unwrap_err(),
            DiagramError::DanglingArc(3)
        );
    }

    #[test]
    fn syntax_errors() {
        for bad in ["X[1,2,3]", "Y[1,2,3,4]", "X[1,2,3,4", "X[0,1,1,0]", "X[a,b,c,d]"] {
            assert!(matches!(pd_parse(bad), Err(DiagramError::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn orientation_clash() {
        // both under-strands claim arc 1 as incoming
        assert!(matches!(
            pd_parse("X[1,3,2,4] X[1,4,2,3]"),
            Err(DiagramError::InconsistentOrientation(_))
        ));
    }
}
