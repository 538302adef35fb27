from celery import shared_task
from rest_framework.exceptions import ValidationError

from apps.hypercore.exceptions import HypergraphError
from apps.hypercore.serializers import HypergraphSerializer
from apps.spectral.services import SpectralService


@shared_task
def compute_rho(payload):
    """ρ of one candidate given in canonical JSON form"""
    serializer = HypergraphSerializer(data=payload)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise HypergraphError(f'Invalid candidate: {exc.detail}')
    return SpectralService.spectral_radius(serializer.validated_data['hypergraph'])
