from rest_framework import serializers

from . import grids
from .exceptions import SweepSpecError
from .services import TARGETS


class GridValuesField(serializers.Field):
    """``3``, ``"5..7"``, ``"1,2"`` or a list mixing integers, ranges and names"""

    def to_internal_value(self, data):
        try:
            return grids.parse_values(data)
        except SweepSpecError as exc:
            raise serializers.ValidationError(str(exc))

    def to_representation(self, value):
        return value


class SweepSpecSerializer(serializers.Serializer):
    """Grid file for ``verify --grid``: a target and a list of grids"""

    target = serializers.ChoiceField(choices=sorted(TARGETS))
    grids = serializers.ListField(
        child=serializers.DictField(child=GridValuesField()),
        allow_empty=True,
    )

    def validate(self, attrs):
        keys = TARGETS[attrs['target']].keys
        for position, grid in enumerate(attrs['grids']):
            extra = sorted(set(grid) - keys)
            if extra:
                raise serializers.ValidationError(
                    f'Grid {position} has keys {", ".join(extra)} that {attrs["target"]} does not take'
                )
        return attrs


class RunManifestSerializer(serializers.Serializer):
    command = serializers.CharField()
    parameters = serializers.DictField()
    tool_version = serializers.CharField()
    tolerances = serializers.DictField()
    started = serializers.CharField()
    wall_clock = serializers.FloatField()
    outputs = serializers.ListField(child=serializers.CharField())
