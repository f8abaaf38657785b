//! Just enough HTTP/1.1 to hand out the debugger page and its assets.

use std::io::{self, Read, Write};
use std::net::TcpStream;
use std::path::{Component, Path, PathBuf};

pub const INDEX_HTML: &str = include_str!("../assets/index.html");
const EMBEDDED: &[(&str, &str, &str)] = &[(
    "qsim.css",
    "text/css; charset=utf-8",
    include_str!("../assets/qsim.css"),
)];

const MAX_HEAD: usize = 16 * 1024;

pub struct Request {
    pub method: String,
    pub path: String,
}

/// Reads the request head and returns method and path (query stripped).
pub fn read_request(stream: &mut TcpStream) -> io::Result<Request> {
    let mut head = Vec::new();
    let mut buf = [0u8; 1024];
    while !head.windows(4).any(|w| w == b"\r\n\r\n") {
        let n = stream.read(&mut buf)?;
        if n == 0 {
            break;
        }
        head.extend_from_slice(&buf[..n]);
        if head.len() > MAX_HEAD {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "request head too large"));
        }
    }
    let text = String::from_utf8_lossy(&head);
    let mut parts = text.lines().next().unwrap_or("").split_whitespace();
    let method = parts.next().unwrap_or("").to_string();
    let target = parts.next().unwrap_or("");
    let path = target.split(['?', '#']).next().unwrap_or("").to_string();
    Ok(Request { method, path })
}

pub fn respond(stream: &mut TcpStream, status: &str, content_type: &str, body: &[u8]) -> io::Result<()> {
    let head = format!(
        "HTTP/1.1 {status}\r\nContent-Type: {content_type}\r\nContent-Length: {}\r\nCache-Control: no-store\r\nConnection: close\r\n\r\n",
        body.len()
    );
    stream.write_all(head.as_bytes())?;
    stream.write_all(body)?;
    stream.flush()
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("js") | Some("mjs") => "text/javascript; charset=utf-8",
        Some("json") | Some("map") => "application/json",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("ico") => "image/x-icon",
        _ => "application/octet-stream",
    }
}

/// Resolves `rel` inside `root`, refusing anything that could escape it.
pub fn safe_join(root: &Path, rel: &str) -> Option<PathBuf> {
    let rel = Path::new(rel);
    if rel.as_os_str().is_empty() || !rel.components().all(|c| matches!(c, Component::Normal(_))) {
        return None;
    }
    Some(root.join(rel))
}

pub fn serve(stream: &mut TcpStream, assets: Option<&Path>) -> io::Result<()> {
    let req = read_request(stream)?;
    if req.method != "GET" && req.method != "HEAD" {
        return respond(stream, "405 Method Not Allowed", "text/plain", b"method not allowed\n");
    }
    if req.path == "/" || req.path == "/index.html" {
        return respond(stream, "200 OK", "text/html; charset=utf-8", INDEX_HTML.as_bytes());
    }
    if let Some(rel) = req.path.strip_prefix("/assets/") {
        if let Some(file) = assets.and_then(|root| safe_join(root, rel)) {
            if let Ok(body) = std::fs::read(&file) {
                return respond(stream, "200 OK", content_type(&file), &body);
            }
        }
        if let Some((_, ty, body)) = EMBEDDED.iter().find(|(name, _, _)| *name == rel) {
            return respond(stream, "200 OK", ty, body.as_bytes());
        }
    }
    respond(stream, "404 Not Found", "text/plain", b"not found\n")
}
