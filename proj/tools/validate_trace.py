"""Validate trace documents against docs/trace-schema.json."""
import json
import sys
from pathlib import Path

import jsonschema

schema = json.loads((Path(__file__).resolve().parent.parent / "docs" / "trace-schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)
failed = False
for path in sys.argv[1:]:
    errors = list(validator.iter_errors(json.loads(Path(path).read_text())))
    for e in errors[:5]:
        print(f"{path}: {e.json_path}: {e.message}")
    failed |= bool(errors)
    print(f"{path}: {'invalid' if errors else 'ok'}")
sys.exit(1 if failed else 0)
