"""Pydantic models of the JSON documents read and written by structctrl.

Node and input indices are 1-based in documents. The models check the
shape and the types of a document; the network invariants (index
ranges, self-loops, subsystem orders) are checked by the network
classes built from them.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar

import pydantic
from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr, conlist

from structctrl import exceptions


Model = TypeVar('Model', bound=BaseModel)


class NetworkDocument(BaseModel):
    n: StrictInt = Field(description='Number of state nodes.')
    m: StrictInt = Field(description='Number of input nodes.')
    state_edges: List[Tuple[StrictInt, StrictInt]] = Field(
        default_factory=list, description='Pairs [j, i]: state j drives state i.')
    input_edges: List[Tuple[StrictInt, StrictInt]] = Field(
        default_factory=list, description='Pairs [s, i]: input s drives state i.')
    labels: Optional[Dict[str, StrictStr]] = Field(
        default=None, description='Display names keyed by state index.')


class CaseStudyDocument(BaseModel):
    family: StrictStr
    parameter: Optional[StrictInt] = None


class ExtendedDocument(NetworkDocument):
    orders: List[StrictInt] = Field(description='Order of each subsystem.')
    heterogeneous: Optional[List[StrictBool]] = Field(
        default=None, description='Whether the copies of each subsystem are interconnected.')
    copy_edges: Optional[List[Tuple[StrictInt, StrictInt, StrictInt, StrictInt]]] = Field(
        default=None, description='Quadruples [j, a, i, b]: copy a of j drives copy b of i.')
    copy_input_edges: Optional[List[Tuple[StrictInt, StrictInt, StrictInt]]] = Field(
        default=None, description='Triples [s, i, b]: input s drives copy b of i.')
    case_study: Optional[CaseStudyDocument] = None


class StemDocument(BaseModel):
    input: StrictInt
    nodes: conlist(StrictInt, min_length=1)


class CoverDocument(BaseModel):
    stems: List[StemDocument] = Field(default_factory=list)
    cycles: List[conlist(StrictInt, min_length=1)] = Field(default_factory=list)


class ReportDocument(BaseModel):
    model_config = ConfigDict(extra='allow')

    tool: Literal['structctrl']
    version: StrictStr
    command: Literal['analyze', 'classify', 'extend', 'bounds', 'verify']
    seed: Optional[StrictInt]
    input_sha1: StrictStr = Field(pattern=r'^[0-9a-f]{40}$')
    config: Optional[Dict[str, Any]] = None


def validate(model: Type[Model], doc: Any, what: str) -> Model:
    """Validate a parsed JSON document against a model.

    Args:
      model: The document model.
      doc: The parsed JSON value.
      what: The document kind, used in error messages.
    Returns:
      The model instance.
    Raises:
      ValidationError: The document does not match the model. The
        first offending field and its value are reported.
    """
    if not isinstance(doc, dict):
        raise exceptions.ValidationError(f'{what.capitalize()} must be a JSON object.')
    try:
        return model.model_validate(doc)
    except pydantic.ValidationError as exc:
        error = exc.errors()[0]
        field = '.'.join(str(part) for part in error['loc'])
        raise exceptions.ValidationError(
            f'Malformed {what}: field "{field}": {error["msg"]}.',
            f'{field} = {error.get("input")!r}') from exc


SCHEMAS = {
    'network': NetworkDocument.model_json_schema(),
    'extended': ExtendedDocument.model_json_schema(),
    'cover': CoverDocument.model_json_schema(),
    'report': ReportDocument.model_json_schema(),
}
