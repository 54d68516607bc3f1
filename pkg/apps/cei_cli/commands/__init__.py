"""CLI commands; each returns a JSON-ready dict."""
