from rest_framework import serializers

from apps.hypercore.serializers import HypergraphSerializer


class GraftOutcomeSerializer(serializers.Serializer):
    """Before/after pair with both radii; graphs only when ``include_graphs`` is set in context"""

    name = serializers.CharField()
    case = serializers.CharField(allow_blank=True)
    claimed_direction = serializers.CharField()
    observed_direction = serializers.CharField()
    rho_before = serializers.FloatField()
    rho_after = serializers.FloatField()
    gap = serializers.FloatField()
    holds = serializers.SerializerMethodField()
    expected_match = serializers.BooleanField(allow_null=True)
    params = serializers.DictField()

    def get_holds(self, obj):
        return obj.holds()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if self.context.get('include_graphs'):
            data['before'] = HypergraphSerializer(instance.before).data
            data['after'] = HypergraphSerializer(instance.after).data
        return data
