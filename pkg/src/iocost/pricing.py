"""Per-request price books for cloud object stores.

Money is handled as integer nanoUSD (10**-9 USD). Every published
per-1,000-request price converts to a whole number of nanoUSD per
request (e.g. $0.0004 per 1,000 is 400 nanoUSD per request), so all
cost arithmetic in this package is exact integer arithmetic. Python
integers are unbounded, which keeps totals exact even at the
10**12-requests-per-day scale the fleet models produce.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

NANOUSD_PER_USD = 10**9

# Request kinds every price book must be able to classify.
CORE_KINDS = ("get", "put", "post", "copy", "list", "head", "select")


@dataclass(frozen=True)
class OperationClass:
    """A vendor billing class, either "read" or "write", with the vendor's own label."""

    name: str
    label: str

    def __post_init__(self) -> None:
        if self.name not in ("read", "write"):
            raise ValueError(f"operation class must be 'read' or 'write', got {self.name!r}")


@dataclass(frozen=True)
class PriceClass:
    """One priced operation class: the kinds it covers and the per-request price."""

    op_class: OperationClass
    kinds: frozenset[str]
    nanousd_per_request: int

    def __post_init__(self) -> None:
        if not self.kinds:
            raise ValueError(f"class {self.op_class.name!r} covers no request kinds")
        if not isinstance(self.nanousd_per_request, int) or isinstance(self.nanousd_per_request, bool):
            raise ValueError(
                f"price for class {self.op_class.name!r} must be an integer nanoUSD amount, "
                f"got {self.nanousd_per_request!r}"
            )
        if self.nanousd_per_request < 0:
            raise ValueError(
                f"price for class {self.op_class.name!r} must be >= 0, "
                f"got {self.nanousd_per_request}"
            )


@dataclass(frozen=True)
class PriceBook:
    """A vendor/tier price list mapping request kinds to per-request prices."""

    book_id: str
    classes: tuple[PriceClass, ...]
    _kind_to_class: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.book_id:
            raise ValueError("price book id must be non-empty")
        if not self.classes:
            raise ValueError(f"price book {self.book_id!r} has no classes")
        mapping: dict[str, PriceClass] = {}
        for pc in self.classes:
            for kind in pc.kinds:
                if kind in mapping:
                    raise ValueError(
                        f"price book {self.book_id!r}: kind {kind!r} appears in more than one class"
                    )
                mapping[kind] = pc
        object.__setattr__(self, "_kind_to_class", mapping)

    def classify(self, kind: str) -> OperationClass:
        """Return the operation class the book bills ``kind`` under."""
        try:
            return self._kind_to_class[kind].op_class
        except KeyError:
            raise ValueError(
                f"price book {self.book_id!r} cannot classify request kind {kind!r}"
            ) from None

    def price_per_request(self, kind: str) -> int:
        """Per-request price of ``kind`` in nanoUSD."""
        try:
            return self._kind_to_class[kind].nanousd_per_request
        except KeyError:
            raise ValueError(
                f"price book {self.book_id!r} cannot classify request kind {kind!r}"
            ) from None

    def cost_of(self, tally: "RequestTally") -> int:
        """Exact cost of a tally in nanoUSD.

        Depends only on request counts, never on bytes; object stores
        charge per call regardless of payload size.
        """
        total = 0
        for kind, count in tally.counts.items():
            total += count * self.price_per_request(kind)
        return total


@dataclass(frozen=True)
class RequestTally:
    """Counts (and informational bytes) of storage requests by kind."""

    counts: dict[str, int] = field(default_factory=dict)
    transferred_bytes: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for kind, count in self.counts.items():
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ValueError(f"count for kind {kind!r} must be a non-negative integer, got {count!r}")
        for kind, nbytes in self.transferred_bytes.items():
            if not isinstance(nbytes, int) or isinstance(nbytes, bool) or nbytes < 0:
                raise ValueError(f"bytes for kind {kind!r} must be a non-negative integer, got {nbytes!r}")
            if nbytes > 0 and self.counts.get(kind, 0) == 0:
                raise ValueError(f"kind {kind!r} transfers {nbytes} bytes but has zero requests")

    def merge(self, other: "RequestTally") -> "RequestTally":
        """Elementwise sum of two tallies."""
        counts = dict(self.counts)
        for kind, count in other.counts.items():
            counts[kind] = counts.get(kind, 0) + count
        nbytes = dict(self.transferred_bytes)
        for kind, b in other.transferred_bytes.items():
            nbytes[kind] = nbytes.get(kind, 0) + b
        return RequestTally(counts, nbytes)

    @property
    def total_requests(self) -> int:
        return sum(self.counts.values())

    @property
    def total_bytes(self) -> int:
        return sum(self.transferred_bytes.values())


def format_usd(nanousd: int) -> str:
    """Format nanoUSD as a USD decimal string, 9 places then trimmed.

    400_000 -> "0.0004", 8 * 10**13 -> "80000". No currency symbol,
    callers add one where it helps.
    """
    sign = "-" if nanousd < 0 else ""
    whole, frac = divmod(abs(nanousd), NANOUSD_PER_USD)
    text = f"{whole}.{frac:09d}".rstrip("0").rstrip(".")
    return sign + text


# Built-in price data. Prices are per request in nanoUSD; the
# published sheets quote per 1,000 requests, so $0.005 per 1,000 is
# 5,000 nanoUSD per request.
_AZURE_TIERS = {
    "premium": (2_280, 190),
    "hot": (6_500, 500),
    "cool": (13_000, 1_300),
    "archive": (13_000, 650_000),
}

_BUILTIN_SPECS: list[dict] = [
    {
        "id": "s3-standard",
        "classes": [
            {
                "class": "write",
                "label": "PUT, COPY, POST, LIST requests",
                "kinds": ["put", "copy", "post", "list"],
                "nanousd_per_request": 5_000,
            },
            {
                "class": "read",
                "label": "GET, SELECT, and all other requests",
                "kinds": ["get", "select", "head"],
                "nanousd_per_request": 400,
            },
        ],
    },
    {
        # XML API pricing. "GET Bucket" is split by the vendor: listing
        # objects bills at the write-class rate (kind "list"), while
        # retrieving bucket configuration bills at the read-class rate
        # (kind "get-bucket-config").
        "id": "gcs-standard-xml",
        "classes": [
            {
                "class": "write",
                "label": "GET Service, GET Bucket (list), PUT, POST",
                "kinds": ["put", "post", "copy", "list"],
                "nanousd_per_request": 5_000,
            },
            {
                "class": "read",
                "label": "GET Bucket (config), GET Object, HEAD",
                "kinds": ["get", "head", "select", "get-bucket-config"],
                "nanousd_per_request": 400,
            },
        ],
    },
]
for _tier, (_w, _r) in _AZURE_TIERS.items():
    _BUILTIN_SPECS.append(
        {
            "id": f"azure-gpv2-{_tier}",
            "classes": [
                {
                    "class": "write",
                    "label": "Write operations",
                    "kinds": ["put", "post", "copy"],
                    "nanousd_per_request": _w,
                },
                {
                    "class": "read",
                    "label": "Read operations",
                    "kinds": ["get", "head", "list", "select"],
                    "nanousd_per_request": _r,
                },
            ],
        }
    )


def pricebook_from_dict(spec: dict) -> PriceBook:
    """Build a PriceBook from the JSON schema used by files and built-ins.

    Schema: {"id": str, "classes": [{"class": "read"|"write",
    "kinds": [str, ...], "nanousd_per_request": int}]}. An optional
    per-class "label" carries the vendor wording.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"price book must be a JSON object, got {type(spec).__name__}")
    book_id = spec.get("id")
    if not isinstance(book_id, str) or not book_id:
        raise ValueError("price book field 'id' must be a non-empty string")
    raw_classes = spec.get("classes")
    if not isinstance(raw_classes, list) or not raw_classes:
        raise ValueError(f"price book {book_id!r}: field 'classes' must be a non-empty array")
    classes = []
    for i, raw in enumerate(raw_classes):
        if not isinstance(raw, dict):
            raise ValueError(f"price book {book_id!r}: classes[{i}] must be an object")
        cls_name = raw.get("class")
        if cls_name not in ("read", "write"):
            raise ValueError(
                f"price book {book_id!r}: classes[{i}].class must be 'read' or 'write', got {cls_name!r}"
            )
        kinds = raw.get("kinds")
        if not isinstance(kinds, list) or not kinds or not all(isinstance(k, str) for k in kinds):
            raise ValueError(f"price book {book_id!r}: classes[{i}].kinds must be a non-empty string array")
        price = raw.get("nanousd_per_request")
        if not isinstance(price, int) or isinstance(price, bool):
            raise ValueError(
                f"price book {book_id!r}: classes[{i}].nanousd_per_request must be an integer, got {price!r}"
            )
        label = raw.get("label", f"{cls_name.capitalize()} operations")
        classes.append(PriceClass(OperationClass(cls_name, label), frozenset(kinds), price))
    return PriceBook(book_id, tuple(classes))


def builtin_pricebooks() -> tuple[PriceBook, ...]:
    """All built-in price books (S3 standard, GCS standard XML, four Azure GPv2 tiers)."""
    return tuple(pricebook_from_dict(spec) for spec in _BUILTIN_SPECS)


def get_pricebook(book_id: str) -> PriceBook:
    """Look up a built-in price book by id."""
    for book in builtin_pricebooks():
        if book.book_id == book_id:
            return book
    known = ", ".join(spec["id"] for spec in _BUILTIN_SPECS)
    raise ValueError(f"unknown price book {book_id!r} (known: {known})")


def load_pricebook(path: str) -> PriceBook:
    """Load a price book from a JSON file using the built-in schema."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"price book file {path}: invalid JSON ({exc})") from None
    return pricebook_from_dict(spec)
