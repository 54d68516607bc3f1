"""CEI path simulation library - random cyclic shifts of exchangeable-increment paths."""
