//! The chat-completions client against a local socket.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::time::Duration;

use mutaprobe_core::harness::endpoint::{request_body, ChatEndpoint, EndpointError, OpenAiEndpoint, API_KEY_ENV};
use mutaprobe_core::harness::{ChatMessage, ModelProfile};

struct Captured {
    request_line: String,
    headers: Vec<String>,
    body: serde_json::Value,
}

/// Answers each connection with the next `(status, body)` and reports what
/// it received.
fn server(responses: Vec<(u16, &'static str)>) -> (String, mpsc::Receiver<Captured>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        for ((status, payload), stream) in responses.into_iter().zip(listener.incoming()) {
            let mut stream = stream.unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            let mut headers = Vec::new();
            let mut len = 0;
            loop {
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                if line == "\r\n" {
                    break;
                }
                let lower = line.to_ascii_lowercase();
                if let Some(v) = lower.strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap();
                }
                headers.push(line.trim_end().to_string());
            }
            let mut body = vec![0; len];
            reader.read_exact(&mut body).unwrap();
            tx.send(Captured {
                request_line: request_line.trim_end().to_string(),
                headers,
                body: serde_json::from_slice(&body).unwrap(),
            })
            .unwrap();
            let resp = format!(
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{payload}",
                payload.len()
            );
            stream.write_all(resp.as_bytes()).unwrap();
        }
    });
    (format!("http://{addr}/v1"), rx)
}

#[test]
fn posts_the_pinned_body_with_bearer_key() {
    let (base, rx) = server(vec![
        (200, r#"{"choices":[{"message":{"role":"assistant","content":"[ANSWER]assert f() == 1[/ANSWER]"}}],"usage":{"prompt_tokens":7,"completion_tokens":3}}"#),
        (429, r#"{"error":"slow down"}"#),
    ]);
    std::env::set_var(API_KEY_ENV, "sk-local");
    let ep = OpenAiEndpoint::new(&base).unwrap();
    std::env::remove_var(API_KEY_ENV);
    let profile = ModelProfile::multi_turn("qwen2.5-coder-7b", &base);
    let messages = vec![ChatMessage::user("hello")];

    let reply = ep.complete(&profile, &messages, Duration::from_secs(10)).unwrap();
    assert_eq!(reply.content, "[ANSWER]assert f() == 1[/ANSWER]");
    assert_eq!((reply.prompt_tokens, reply.completion_tokens), (Some(7), Some(3)));
    let got = rx.recv().unwrap();
    assert_eq!(got.request_line, "POST /v1/chat/completions HTTP/1.1");
    assert!(got.headers.iter().any(|h| h.eq_ignore_ascii_case("authorization: Bearer sk-local")), "{:?}", got.headers);
    assert_eq!(got.body, request_body(&profile, &messages));
    assert_eq!(got.body["temperature"], 0.0);
    assert_eq!(got.body["max_tokens"], 1024);

    let err = ep.complete(&profile, &messages, Duration::from_secs(10)).unwrap_err();
    assert!(matches!(err, EndpointError::Status { status: 429, .. }));
    assert!(err.is_transient());
}
