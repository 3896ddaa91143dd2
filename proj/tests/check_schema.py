"""Validates a JSON document against a JSON Schema file."""
import json
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(0)

schema_path, doc_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
with open(doc_path) as f:
    doc = json.load(f)
jsonschema.validate(doc, schema)
print(f"{doc_path} conforms to {schema_path}")
